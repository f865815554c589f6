"""Verification reports: run every applicable check on an algebra and collect verdicts.

A report is a plain JSON-ready ``dict``.  Every rational number is written
as a ``p/q`` string; timings live under a separate ``timings_ms`` key so that
the rest of the document is reproducible byte for byte.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import biderivations as bd
from . import commuting as cm
from .algebra import LieAlgebra, build_gl, build_simple, build_sl, verify_structure
from .derivations import LinearMap, derivation_space, is_derivation, is_inner
from .linalg import format_rational
from .roots import RootSystemType, generate, verify_all_connected

SCHEMA_VERSION = 1
ALL_CHECKS = ("structure", "connected", "derivations", "biderivations", "commuting", "identities")
DEFAULT_SUITE = [
    {"family": "A", "rank": 1},
    {"family": "A", "rank": 2},
    {"family": "A", "rank": 3},
    {"family": "B", "rank": 2},
    {"family": "B", "rank": 3},
    {"family": "C", "rank": 3},
    {"family": "D", "rank": 4},
    {"family": "G", "rank": 2},
    {"gl": 2},
    {"gl": 3},
]
COMMUTING_SAMPLES = 1000


class UsageError(ValueError):
    """Malformed algebra specification or configuration."""


@dataclass
class AlgebraSpec:
    """Which algebra to build: a root-system type, ``gl_n``, ``sl_n`` or a JSON file."""

    family: Optional[str] = None
    rank: Optional[int] = None
    gl: Optional[int] = None
    sl: Optional[int] = None
    input: Optional[str] = None

    @classmethod
    def from_dict(cls, d: dict) -> "AlgebraSpec":
        unknown = set(d) - {"family", "rank", "gl", "sl", "input"}
        if unknown:
            raise UsageError(f"unknown algebra keys: {sorted(unknown)}")
        spec = cls(**d)
        spec.validate()
        return spec

    def validate(self):
        chosen = [self.family is not None, self.gl is not None, self.sl is not None, self.input is not None]
        if sum(chosen) != 1:
            raise UsageError("give exactly one of family/rank, gl, sl or input")
        if self.family is not None:
            if self.rank is None:
                raise UsageError("family requires a rank")
            try:
                RootSystemType(self.family, self.rank)
            except ValueError as e:
                raise UsageError(str(e)) from None
        for n in (self.gl, self.sl):
            if n is not None and (not isinstance(n, int) or n < 2):
                raise UsageError("gl_n and sl_n need n >= 2")

    def build(self) -> LieAlgebra:
        if self.family is not None:
            return build_simple(generate(RootSystemType(self.family, self.rank)))
        if self.gl is not None:
            return build_gl(self.gl)
        if self.sl is not None:
            return build_sl(self.sl)
        try:
            return LieAlgebra.from_json(Path(self.input).read_text())
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise UsageError(f"cannot load algebra from {self.input}: {e}") from None


def _q(x) -> str:
    return format_rational(x)


def _is_simple_like(L: LieAlgebra) -> bool:
    return L.kind.name in ("simple", "sl")


class _Checks:
    """Collects named PASS/FAIL outcomes and timings for one algebra."""

    def __init__(self):
        self.outcomes: Dict[str, bool] = {}
        self.timings: Dict[str, int] = {}

    def record(self, name: str, ok: bool):
        self.outcomes[name] = bool(ok) and self.outcomes.get(name, True)


def _structure(L, checks: _Checks) -> dict:
    r = verify_structure(L)
    checks.record("structure", r.ok)
    return r.to_dict()


def _connected(L, checks: _Checks) -> Optional[dict]:
    rs = L.rootsystem
    if rs is None:
        return None
    ok, failures = verify_all_connected(rs)
    checks.record("connected", ok)
    return {
        "ok": ok,
        "roots": len(rs.roots),
        "failures": [[[_q(c) for c in a], [_q(c) for c in b]] for a, b in failures],
    }


def _derivations(L, checks: _Checks) -> dict:
    space = derivation_space(L)
    maps = space.maps()
    sound = all(is_derivation(L, D) for D in maps)
    inner = [is_inner(L, D) is not None for D in maps]
    out = {
        "dim": space.dim,
        "constraint_rows": space.space.constraint_rows,
        "constraint_rank": space.space.constraint_rank,
        "sound": sound,
        "inner": sum(inner),
    }
    ok = sound
    if _is_simple_like(L):
        lemma = space.dim == L.dim and all(inner)
        out["inner_lemma"] = lemma
        ok = ok and lemma
    checks.record("derivations", ok)
    return out


def _biderivations(L, checks: _Checks, cap: Optional[int]) -> tuple:
    space = bd.biderivation_space(L, cap)
    maps = space.maps()
    entries = []
    ok = True
    for f in maps:
        e: dict = {"sound": bd.is_biderivation(L, f), "skew": bd.is_skew(f), "symmetric": bd.is_symmetric(f)}
        ok = ok and e["sound"]
        if _is_simple_like(L):
            lam = bd.decompose_inner(L, f)
            e["lambda"] = None if lam is None else _q(lam)
            pair = bd.extract_phi_psi(L, f)
            e["phi_psi"] = pair is not None
            if pair is not None:
                e["phi_psi_reproduces"] = _reproduces(L, f, pair)
                e["cartan_stable"] = bd.cartan_stability(L, pair)
                e["phi_psi_scalar"] = lam is not None and pair.phi == pair.psi == LinearMap.scalar(L, lam)
            good = lam is not None and pair is not None and all(
                e[k] for k in ("phi_psi_reproduces", "cartan_stable", "phi_psi_scalar")
            )
            if not good:
                e["offending"] = f.to_list()
            ok = ok and good
        elif L.kind.name == "gl":
            dec = bd.decompose_gl(f)
            e["mu_lambda"] = None if dec is None else [_q(dec[0]), _q(dec[1])]
            if dec is None:
                e["offending"] = f.to_list()
            ok = ok and dec is not None
        entries.append(e)
    skew = bd.skew_subspace(space)
    out = {
        "dim": space.dim,
        "ambient_dim": space.space.ambient_dim,
        "constraint_rows": space.space.constraint_rows,
        "constraint_rank": space.space.constraint_rank,
        "basis": entries,
        "skew_dim": skew.dim,
    }
    if _is_simple_like(L):
        ok = ok and space.dim == 1 and skew.dim == 1
    elif L.kind.name == "gl":
        # the complement of the skew line is spanned by a symmetric biderivation
        sym = [f for f in maps if bd.is_symmetric(f)]
        out["symmetric_complement"] = len(sym) == 1 and skew.dim == 1
        ok = ok and space.dim == 2 and out["symmetric_complement"]
    checks.record("biderivations", ok)
    return out, space, skew


def _reproduces(L, f, pair) -> bool:
    n = L.dim
    one = Fraction(1)
    for i in range(n):
        for j in range(n):
            fij = f.at(i, j)
            if L.bracket_sparse(pair.phi.columns[i], {j: one}) != fij:
                return False
            if L.bracket_sparse({i: one}, pair.psi.columns[j]) != fij:
                return False
    return True


def _identities(L, checks: _Checks, space, skew, seed: int) -> dict:
    quads = bd.default_quadruples(L, seed)
    eq8 = [bd.check_identity_eight(L, f, quads) for f in space.maps()]
    skew_maps = [bd.BilinearMap.from_vector(L, v) for v in skew.basis]
    eq4_skew = [bd.check_identity_four(L, f, quads) for f in skew_maps]
    eq4_all = [bd.check_identity_four(L, f, quads) for f in space.maps()]
    checks.record("identities", all(eq8) and all(eq4_skew))
    return {
        "quadruples": "all basis quadruples" if L.dim <= bd.EXHAUSTIVE_LIMIT else f"{len(quads)} seeded random",
        "four_term_all_basis": eq8,
        "commutator_symmetry_skew_basis": eq4_skew,
        "commutator_symmetry_basis": eq4_all,
    }


def _commuting(L, checks: _Checks, seed: int) -> dict:
    space = cm.commuting_space(L)
    maps = space.maps()
    samples = cm.random_elements(L, COMMUTING_SAMPLES, seed)
    sound = all(cm.is_commuting(L, phi) and cm.commutes_on(L, phi, samples) for phi in maps)
    out: dict = {
        "dim": space.dim,
        "constraint_rows": space.space.constraint_rows,
        "constraint_rank": space.space.constraint_rank,
        "sound": sound,
    }
    ok = sound
    if _is_simple_like(L):
        lams = [cm.decompose_simple(L, phi) for phi in maps]
        out["lambdas"] = [None if x is None else _q(x) for x in lams]
        ok = ok and space.dim == 1 and all(x is not None for x in lams)
    elif L.kind.name == "gl":
        decs = []
        for phi in maps:
            dec = cm.decompose_gl(phi)
            if dec is None:
                decs.append(None)
                ok = False
                continue
            sigma, lam = dec
            c, rest = cm.sigma_as_trace(L, sigma)
            decs.append({
                "sigma": [_q(s) for s in sigma],
                "lambda": _q(lam),
                "trace_multiple": _q(c),
                "pure_trace": not any(rest),
            })
        out["decompositions"] = decs
        ok = ok and space.dim == L.kind.n ** 2 + 1
    checks.record("commuting", ok)
    return out


def describe(L: LieAlgebra) -> dict:
    d: dict = {"name": str(L), "kind": L.kind.name, "dim": L.dim}
    if L.rootsystem is not None:
        rs = L.rootsystem
        d["family"] = rs.rstype.family
        d["rank"] = rs.rstype.rank
        d["simple_roots"] = [[_q(c) for c in r] for r in rs.simple_roots]
    return d


def verify(
    L: LieAlgebra,
    checks: Sequence[str] = ALL_CHECKS,
    seed: int = 0,
    cap: Optional[int] = bd.DEFAULT_CAP,
) -> dict:
    """Run the requested checks on ``L`` and return one report entry."""
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    needs_bider = "biderivations" in checks or "identities" in checks
    if needs_bider:
        bd.check_cap(L, cap)
    c = _Checks()
    entry: dict = {"algebra": describe(L)}

    def timed(name, fn, *args):
        t0 = time.perf_counter()
        result = fn(*args)
        c.timings[name] = int((time.perf_counter() - t0) * 1000)
        return result

    if "structure" in checks:
        entry["structure"] = timed("structure", _structure, L, c)
    if "connected" in checks:
        entry["connected"] = timed("connected", _connected, L, c)
    if "derivations" in checks:
        entry["derivations"] = timed("derivations", _derivations, L, c)
    if needs_bider:
        b_out, space, skew = timed("biderivations", _biderivations, L, c, cap)
        if "biderivations" in checks:
            entry["biderivations"] = b_out
        else:
            c.outcomes.pop("biderivations", None)
        if "identities" in checks:
            entry["identities"] = timed("identities", _identities, L, c, space, skew, seed)
    if "commuting" in checks:
        entry["commuting"] = timed("commuting", _commuting, L, c, seed)
    entry["checks"] = {k: "PASS" if v else "FAIL" for k, v in c.outcomes.items()}
    entry["verdict"] = "PASS" if all(c.outcomes.values()) else "FAIL"
    entry["timings_ms"] = c.timings
    return entry


@dataclass
class SuiteConfig:
    entries: List[AlgebraSpec] = field(default_factory=lambda: [AlgebraSpec.from_dict(d) for d in DEFAULT_SUITE])
    cap: Optional[int] = bd.DEFAULT_CAP
    seed: int = 0
    checks: Sequence[str] = ALL_CHECKS

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        try:
            entries = [AlgebraSpec.from_dict(e) for e in d.get("entries", DEFAULT_SUITE)]
        except TypeError as e:
            raise UsageError(f"bad suite entry: {e}") from None
        return cls(entries, d.get("cap", bd.DEFAULT_CAP), d.get("seed", 0), tuple(d.get("checks", ALL_CHECKS)))


def run_suite(config: SuiteConfig) -> dict:
    """Build and verify every configured algebra, in configuration order."""
    algebras = [spec.build() for spec in config.entries]
    if "biderivations" in config.checks or "identities" in config.checks:
        for L in algebras:
            bd.check_cap(L, config.cap)
    results = [verify(L, config.checks, config.seed, config.cap) for L in algebras]
    passed = sum(r["verdict"] == "PASS" for r in results)
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": config.seed,
        "cap": config.cap,
        "checks": list(config.checks),
        "entries": results,
        "summary": {"entries": len(results), "passed": passed, "failed": len(results) - passed},
        "verdict": "PASS" if passed == len(results) else "FAIL",
    }


def strip_timings(report: dict) -> dict:
    out = dict(report)
    out["entries"] = [{k: v for k, v in e.items() if k != "timings_ms"} for e in report["entries"]]
    return out


def to_json(report: dict, timings: bool = True) -> str:
    return json.dumps(report if timings else strip_timings(report), indent=1, sort_keys=True) + "\n"


def render_text(report: dict) -> str:
    lines = []
    for e in report["entries"]:
        a = e["algebra"]
        lines.append(f"{a['name']} (dim {a['dim']})")
        if "simple_roots" in a:
            lines.append("  simple roots: " + "; ".join("(" + ", ".join(r) + ")" for r in a["simple_roots"]))
        for name, verdict in e["checks"].items():
            lines.append(f"  [{verdict}] {name}: {_summary(name, e)}")
        lines.append(f"  verdict: {e['verdict']}")
    s = report["summary"]
    if not s["entries"]:
        lines.append("no entries")
    lines.append(f"overall: {report['verdict']} ({s['passed']}/{s['entries']} passed)")
    return "\n".join(lines) + "\n"


def _summary(name: str, e: dict) -> str:
    if name == "structure":
        r = e["structure"]
        return ", ".join(f"{k[:-3]}={r[k]}" for k in ("antisym_ok", "jacobi_ok", "serre_ok", "grading_ok") if r[k] is not None)
    if name == "connected":
        r = e["connected"]
        return f"{r['roots']} roots, all connected={r['ok']}"
    if name == "derivations":
        r = e["derivations"]
        return f"dim {r['dim']}, inner {r['inner']}"
    if name == "biderivations":
        r = e["biderivations"]
        text = f"dim {r['dim']}, skew dim {r['skew_dim']}"
        decs = [b.get("lambda", b.get("mu_lambda")) for b in r["basis"] if "lambda" in b or "mu_lambda" in b]
        return text + (f", decompositions {decs}" if decs else "")
    if name == "identities":
        r = e["identities"]
        full = r["commutator_symmetry_basis"]
        return (
            f"four-term identity {all(r['four_term_all_basis'])}, "
            f"commutator symmetry on skew {all(r['commutator_symmetry_skew_basis'])}, "
            f"on {sum(full)}/{len(full)} basis maps ({r['quadruples']})"
        )
    if name == "commuting":
        r = e["commuting"]
        return f"dim {r['dim']}"
    return ""
