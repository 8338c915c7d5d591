"""Execute parsed scripts and build JSON-ready reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from .agj import d_a, d_l, d_r, defect, delta, four_term_sequences, gamma, purity_and_split
from .config import configure, settings
from .dsl import Program, ScriptError, parse_script
from .errors import FpcatError
from .functors import (
    _nat,
    evaluate,
    functor_from_morphism,
    tensor_functor,
    yoneda,
)
from .modules import (
    _hom,
    basis_modules,
    free_module,
    make_module,
    make_morphism,
    other_side,
    short_exact_sequence,
    tensor_group,
)
from .rings import builtin_ring, load_ring, make_zmod
from . import suite

SCHEMA_VERSION = "1"


@dataclass
class Report:
    seed: int
    results: list = field(default_factory=list)
    error: dict = None
    timings: list = None

    @property
    def passed(self):
        return self.error is None and all(r.get("status", "ok") != "fail" for r in self.results)

    def to_json(self):
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool": "fpcat",
            "version": __version__,
            "seed": self.seed,
            "status": "pass" if self.passed else "fail",
            "results": self.results,
        }
        if self.error is not None:
            out["error"] = self.error
        if self.timings is not None:
            out["timing_seconds"] = self.timings
        return out


def _group(g):
    return {"invariant_factors": list(g.invariant_factors), "order": g.order}


def _values(F):
    return [dict(module=L.label, **_group(evaluate(F, L).group))
            for L in basis_modules(F.ring, F.variable_side)]


class Runner:
    def __init__(self, seed=0, base_dir=None):
        self.seed = seed
        self.base_dir = base_dir
        self.env = {}

    # definitions
    def define(self, st):
        a = st.args
        if st.kind == "ring":
            form, arg = a
            if form == "zmod":
                obj = make_zmod(int(arg))
            elif form == "builtin":
                obj = builtin_ring(arg)
            else:
                import os

                path = arg if self.base_dir is None or os.path.isabs(arg) else os.path.join(self.base_dir, arg)
                obj = load_ring(path)
        elif st.kind == "module":
            ring = self.env[a[1]]
            if a[0] == "free":
                obj = free_module(ring, a[2], a[3], label=st.name, check_size=True)
            else:
                obj = make_module(ring, a[2], a[3], gens=a[4], label=st.name)
        elif st.kind == "morphism":
            obj = make_morphism(self.env[a[0]], self.env[a[1]], [list(v) for v in a[2]])
        else:
            form, ref = a
            target = self.env[ref]
            if form == "fp":
                obj = functor_from_morphism(target, st.name)
            elif form == "yoneda":
                obj = yoneda(target, st.name)
            elif form == "tensor":
                obj = tensor_functor(target)
            else:
                obj = {"dual": d_a, "dr": d_r, "dl": d_l}[form](target)
        self.env[st.name] = obj
        return {"line": st.line, "define": st.kind, "name": st.name, "summary": self._summary(obj)}

    def _summary(self, obj):
        from .functors import FpFunctor
        from .modules import FpModule, ModuleMorphism

        if isinstance(obj, FpModule):
            return dict(side=obj.side, gens=obj.gens, **_group(obj.group))
        if isinstance(obj, ModuleMorphism):
            return {"mono": obj.is_mono(), "epi": obj.is_epi()}
        if isinstance(obj, FpFunctor):
            return {"variable_side": obj.variable_side, "values": _values(obj)}
        return {"label": obj.label, "size": obj.size, "commutative": obj.is_commutative}

    # commands
    def command(self, st):
        a = st.args
        e = self.env
        k = st.kind
        out = {"line": st.line, "command": st.to_source()}
        if k == "eval":
            out["result"] = _group(evaluate(e[a[0]], e[a[1]]).group)
        elif k == "hom":
            out["result"] = _group(_hom(e[a[0]], e[a[1]]).group)
        elif k == "tensor":
            out["result"] = _group(tensor_group(e[a[0]], e[a[1]]).group)
        elif k == "nat":
            out["result"] = _group(_nat(e[a[0]], e[a[1]]).group)
        elif k == "defect":
            w = defect(e[a[0]])
            out["result"] = dict(module=w.to_json(), **_group(w.group))
        elif k in ("dual", "dr", "dl"):
            F = {"dual": d_a, "dr": d_r, "dl": d_l}[k](e[a[0]])
            out["result"] = {"variable_side": F.variable_side, "values": _values(F),
                             "defining": F.defining.to_json()}
        elif k in ("gamma", "delta"):
            F = e[a[0]]
            t = gamma(F) if k == "gamma" else delta(F)
            basis = basis_modules(F.ring, F.variable_side)
            comps = [{"module": L.label, "isomorphism": t.component(L).is_isomorphism()} for L in basis]
            ok = all(c["isomorphism"] for c in comps)
            out["result"] = {"components": comps, "isomorphism": ok}
            out["status"] = "pass" if ok else "fail"
        elif k == "fourterm":
            ft = four_term_sequences(e[a[0]])
            out["result"] = ft.to_json()
            out["status"] = "pass" if ft.ok else "fail"
        elif k == "purity":
            seq = short_exact_sequence(e[a[0]], e[a[1]])
            if not seq.is_exact:
                out["result"] = {"short_exact": False}
                out["status"] = "fail"
            else:
                out["result"] = purity_and_split(seq).to_json()
        elif k == "check":
            claims = self._check(a[0], [e[n] for n in a[1:]], dict(st.options))
            out["result"] = {"claims": [c.to_json() for c in claims]}
            out["status"] = "pass" if all(c.passed for c in claims) else "fail"
        elif k == "suite":
            opts = dict(st.options)
            ring = e[opts["ring"]] if "ring" in opts else builtin_ring("Z4")
            rep = suite.verify_suite(ring, int(opts.get("maxgens", 1)), self.seed,
                                     int(opts.get("samples", 20)))
            out["result"] = rep.to_json()
            out["status"] = "pass" if rep.passed else "fail"
        return out

    def _functors(self, names, opts):
        from .corpus import functor_corpus
        from .functors import FpFunctor

        if names:
            return list(names)
        if "ring" in opts:
            return list(functor_corpus(self.env[opts["ring"]], "right", int(opts.get("maxgens", 1))))
        return [v for v in self.env.values() if isinstance(v, FpFunctor)]

    def _check(self, what, names, opts):
        from .corpus import functor_corpus, module_corpus
        from .modules import FpModule

        fs = self._functors(names, opts)
        samples = int(opts.get("samples", 20))
        if what == "yoneda":
            return [suite.check_yoneda(fs), suite.check_coyoneda(fs)]
        if what == "duality":
            if "ring" in opts:
                mods = list(module_corpus(self.env[opts["ring"]], "right", int(opts.get("maxgens", 1))))
            else:
                mods = [v for v in self.env.values() if isinstance(v, FpModule)]
            return suite.check_duality(fs, mods)
        # adjunction: F on one side, G on the other
        if "ring" in opts:
            ring, mg = self.env[opts["ring"]], int(opts.get("maxgens", 1))
            lefts, rights = list(functor_corpus(ring, "right", mg)), list(functor_corpus(ring, "left", mg))
        else:
            if not fs:
                return []
            side = fs[0].variable_side
            lefts = [F for F in fs if F.variable_side == side]
            rights = [G for G in fs if G.variable_side != side] or [d_a(F) for F in lefts]
            samples = max(samples, len(lefts) * len(rights)) if names else samples
        return suite.check_adjunctions(lefts, rights, samples, self.seed)

    def run(self, program, timing=False):
        report = Report(self.seed, timings=[] if timing else None)
        for st in program.statements:
            t0 = time.perf_counter()
            try:
                if st.kind in ("ring", "module", "morphism", "functor"):
                    report.results.append(self.define(st))
                else:
                    report.results.append(self.command(st))
            except FpcatError as exc:
                report.error = {
                    "type": type(exc).__name__,
                    "message": str(exc),
                    "line": st.line,
                    "column": st.column,
                }
                break
            if timing:
                report.timings.append(round(time.perf_counter() - t0, 6))
        return report


def run_program(program, seed=0, max_module_size=None, debug_extensional=False, timing=False,
                base_dir=None):
    changes = {"debug_extensional": debug_extensional}
    if max_module_size is not None:
        changes["max_module_size"] = max_module_size
    with configure(**changes):
        return Runner(seed, base_dir).run(program, timing)


def run_script(text, **kwargs):
    return run_program(parse_script(text), **kwargs)


def render_text(report):
    lines = []
    for r in report.results:
        if "define" in r:
            lines.append(f"[{r['line']}] {r['define']} {r['name']}")
            continue
        res = r.get("result", {})
        status = r.get("status", "ok")
        if "invariant_factors" in res:
            inv = res["invariant_factors"]
            body = " + ".join(f"Z/{d}" for d in inv) if inv else "0"
        elif "claims" in res:
            body = "; ".join(f"{c['claim']}: {c['status']} ({c['checked']})" for c in res["claims"])
        elif "values" in res:
            body = ", ".join(f"{v['module']}: {v['invariant_factors']}" for v in res["values"])
        else:
            body = ", ".join(f"{k}={v}" for k, v in res.items() if not isinstance(v, (dict, list)))
        lines.append(f"[{r['line']}] {r['command']} -> {body} [{status}]")
    if report.error:
        e = report.error
        lines.append(f"error at line {e['line']}, column {e['column']}: {e['type']}: {e['message']}")
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines) + "\n"
