"""``horn-rank`` command-line front end.

Input file format::

    B: 4 2
    1 0
    -2 1
    1 -2
    0 1
    c: generic            # or  c: 1/2 3 -5/7 0
    convention: falling   # optional
    seed: 0               # optional
    window: 12            # optional
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import random
import sys
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .combinatorics import (
    HornConfig,
    alpha_vector,
    artinian_criterion,
    dependent_opposite_pairs,
    generic_rank,
    index_table,
    puiseux_rank,
)
from .errors import GenericityFailure, HornError, InvariantError, ParseError, ResourceExhausted, UnsupportedShape
from .groebner import (
    buchberger,
    generic_initial_ideal,
    lattice_basis_ideal,
    membership_alpha,
    saturate_lattice_ideal,
)
from .linalg import IntMatrix, lattice_quotient
from .polynomial import MonomialOrder
from .puiseux import all_puiseux, verify_puiseux
from .series import (
    DEFAULT_WINDOW,
    basis_independent,
    exponent_classes_distinct,
    full_basis,
    puiseux_disjoint_from_series,
    verify_annihilation,
    verify_horn_series,
)
from .shift import (
    compatibility_check,
    has_mixed_rows,
    horn_polys,
    rational_compatibility_check,
    psi_operator,
    resultant_certificate,
    special_form,
)
from .standard_pairs import admissible_T, dependent_multiplicity, embedded_pair_count, top_pairs

log = logging.getLogger("hornrank")

COMMANDS = ("rank", "puiseux", "series", "decompose", "identity", "psi", "verify", "all")
SCHEMA = 1
DEFAULT_RESAMPLE_CAP = 8

EXIT_OK = 0
EXIT_GENERICITY = 2
EXIT_RESOURCES = 3
EXIT_INPUT = 4


@dataclass(frozen=True)
class JobSpec:
    B: tuple
    c: object  # "generic" or tuple of Fractions
    convention: str = "falling"
    seed: int = 0
    window: int = DEFAULT_WINDOW
    resample_cap: int = DEFAULT_RESAMPLE_CAP
    command: str = "all"

    def config(self, attempt: int = 0) -> HornConfig:
        c = None if self.c == "generic" else self.c
        cfg = HornConfig(IntMatrix(self.B), c, seed=self.seed, convention=self.convention)
        if attempt and cfg.generic:
            cfg = cfg.resample(attempt)
        return cfg


def _parse_int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def _parse_rational(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational p/q, got {tok!r}", line, col) from None


def _tokens(text: str):
    """Yield ``(line_no, col, token)`` with comments stripped."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        pos = 0
        for tok in body.split():
            col = body.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            yield ln, col, tok


def parse(text: str, command: str = "all") -> JobSpec:
    """Parse and validate a job description."""
    toks = list(_tokens(text))
    pos = 0
    fields: dict = {}

    def take():
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1] if toks else (1, 1, "")
            raise ParseError("unexpected end of input", last[0], last[1] + len(last[2]))
        t = toks[pos]
        pos += 1
        return t

    while pos < len(toks):
        ln, col, tok = take()
        key = tok.lower()
        if key == "b:":
            _, c1, n_tok = take()
            n = _parse_int(n_tok, ln, c1)
            l2, c2, m_tok = take()
            m = _parse_int(m_tok, l2, c2)
            if m != 2:
                raise ParseError("B must have 2 columns", l2, c2)
            if n < 2:
                raise ParseError("B needs at least 2 rows", ln, c1)
            rows = []
            for _ in range(n):
                row = []
                for _ in range(m):
                    l3, c3, t3 = take()
                    row.append(_parse_int(t3, l3, c3))
                rows.append(tuple(row))
            fields["B"] = tuple(rows)
        elif key == "c:":
            l1, c1, t1 = take()
            if t1.lower() == "generic":
                fields["c"] = "generic"
            else:
                if "B" not in fields:
                    raise ParseError("c given before B", l1, c1)
                vals = [_parse_rational(t1, l1, c1)]
                # read rationals until the next key
                while pos < len(toks) and not toks[pos][2].endswith(":"):
                    l3, c3, t3 = take()
                    vals.append(_parse_rational(t3, l3, c3))
                fields["c"] = tuple(vals)
        elif key == "convention:":
            l1, c1, t1 = take()
            if t1 not in ("falling", "rising"):
                raise ParseError(f"unknown convention {t1!r}", l1, c1)
            fields["convention"] = t1
        elif key == "seed:":
            l1, c1, t1 = take()
            fields["seed"] = _parse_int(t1, l1, c1)
        elif key == "window:":
            l1, c1, t1 = take()
            fields["window"] = _parse_int(t1, l1, c1)
            if fields["window"] < 0:
                raise ParseError("window must be nonnegative", l1, c1)
        else:
            raise ParseError(f"unexpected token {tok!r}", ln, col)

    if "B" not in fields:
        raise ParseError("missing 'B:' block", 1, 1)
    fields.setdefault("c", "generic")
    if command not in COMMANDS:
        raise InvariantError("command", f"unknown command {command!r}")
    job = JobSpec(command=command, **fields)
    if job.c != "generic" and len(job.c) != len(job.B):
        raise InvariantError("parameter length", f"expected {len(job.B)} entries, got {len(job.c)}")
    job.config()  # validates column sums and rank
    return job


# -- serialization helpers -----------------------------------------------------

def q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qvec(v) -> list:
    return [q(x) for x in v]


def _digest(job: JobSpec) -> str:
    canon = json.dumps(
        {"B": [list(r) for r in job.B], "c": job.c if job.c == "generic" else qvec(job.c),
         "convention": job.convention, "seed": job.seed, "window": job.window},
        sort_keys=True,
    )
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# -- sections ------------------------------------------------------------------

def section_rank(cfg: HornConfig) -> dict:
    table = [
        {"pair": [p.i + 1, p.j + 1], "opposite": p.opposite, "dependent": p.dependent, "nu": p.nu}
        for p in index_table(cfg.B) if p.opposite
    ]
    out = {
        "d": list(cfg.d),
        "g": cfg.g,
        "puiseux_rank": puiseux_rank(cfg),
        "alpha": list(alpha_vector(cfg)),
        "artinian": artinian_criterion(cfg),
        "opposite_pairs": table,
    }
    if cfg.n > 2:
        rep = generic_rank(cfg)
        out.update(
            rank=rep.rank, d1d2=rep.d1d2, sum_dep_nu=rep.sum_dep_nu,
            sum_indep_nu=rep.sum_indep_nu, vol_A=rep.vol_A, identity_holds=rep.identity_holds,
        )
    else:
        out.update(rank=None, d1d2=cfg.d[0] * cfg.d[1])
    return out


def section_puiseux(cfg: HornConfig) -> dict:
    sols = all_puiseux(cfg)
    items = []
    for s in sols:
        items.append({
            "pair": [s.pair.i + 1, s.pair.j + 1],
            "base_point": list(s.base_point),
            "ambient": [[list(p), q(v)] for p, v in sorted(s.ambient.items())],
            "horn": [[qvec(e), q(v)] for e, v in sorted(s.terms.items())],
            "text": s.format(),
            "ambient_text": s.format_ambient(),
            "verified": verify_puiseux(s, cfg),
        })
    return {"count": len(items), "expected": puiseux_rank(cfg), "solutions": items}


def _weights_rng(cfg: HornConfig, salt: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{salt}")


def section_decompose(cfg: HornConfig) -> dict:
    B = cfg.B
    lat = lattice_basis_ideal(B)
    sat = saturate_lattice_ideal(B)
    MI, w1 = generic_initial_ideal(lat, _weights_rng(cfg, "I"))
    MB, w2 = generic_initial_ideal(sat, _weights_rng(cfg, "IB"))
    T = admissible_T(MI, B)
    topI = top_pairs(MI)
    topB = top_pairs(MB)
    mult = [
        {"pair": [k + 1, l + 1], "multiplicity": dependent_multiplicity(MI, k, l)}
        for k, l in dependent_opposite_pairs(B)
    ]
    gb = buchberger(lat, MonomialOrder(w1))
    return {
        "lattice_basis_ideal": [g.format() for g in lat],
        "lattice_ideal": [g.format() for g in sat],
        "groebner_basis_I": [g.format() for g in gb.generators],
        "weight_I": list(w1),
        "weight_IB": list(w2),
        "in_w_I": [list(m) for m in MI.generators],
        "in_w_IB": [list(m) for m in MB.generators],
        "top_pairs_I": len(topI),
        "T_I": len(T),
        "top_pairs_IB": len(topB),
        "embedded_pairs_I": embedded_pair_count(MI),
        "dependent_multiplicities": mult,
        "alpha_membership": membership_alpha(B, alpha_vector(B), sat),
    }


def section_identity(cfg: HornConfig) -> dict:
    rep = generic_rank(cfg)
    dec = section_decompose(cfg)
    mult_sum = sum(m["multiplicity"] for m in dec["dependent_multiplicities"])
    checks = {
        "closed_form_sides_equal": rep.d1d2 - rep.sum_dep_nu == rep.g * rep.vol_A + rep.sum_indep_nu,
        "T_equals_rank": dec["T_I"] == rep.rank,
        "top_IB_equals_g_vol": dec["top_pairs_IB"] == rep.g * rep.vol_A,
        "top_I_equals_d1d2": dec["top_pairs_I"] == rep.d1d2,
        "multiplicities_equal_nu": mult_sum == rep.sum_dep_nu,
        "alpha_membership": dec["alpha_membership"],
    }
    return {
        "d1d2_minus_dep": rep.d1d2 - rep.sum_dep_nu,
        "g_vol_plus_indep": rep.g * rep.vol_A + rep.sum_indep_nu,
        "T_I": dec["T_I"],
        "top_pairs_IB": dec["top_pairs_IB"],
        "checks": checks,
        "holds": all(checks.values()),
    }


def section_psi(cfg: HornConfig) -> dict:
    ops = horn_polys(cfg.B, cfg.c)
    P1, P2 = ops.P
    Q1, Q2 = ops.Q
    out = {
        "H1": ops.H[0].format(),
        "H2": ops.H[1].format(),
        "compatible": compatibility_check(P1, P2, Q1, Q2),
        "rational_compatible": rational_compatibility_check(P1, P2, Q1, Q2),
        "mixed_sign_rows": has_mixed_rows(cfg.B),
        "psi": psi_operator(P1, P2, Q1, Q2).format(),
        "special_form": None,
    }
    try:
        sf = special_form(cfg.B, cfg.c)
        res = resultant_certificate(sf.f, sf.g)
        out["special_form"] = {
            "f": sf.f.format(["t"]),
            "g": sf.g.format(["t"]),
            "resultant": q(res),
            "holonomic_certificate": res != 0,
        }
    except UnsupportedShape as exc:
        out["special_form_note"] = str(exc)
    return out


def _series_payload(fb, cfg) -> list:
    items = []
    for r, phi, h in zip(fb.roots, fb.series, fb.horn):
        items.append({
            "sigma": [i + 1 for i in r.pair.sigma],
            "eta": list(r.pair.eta),
            "v": qvec(r.v),
            "alpha": qvec(h.alpha),
            "terms": len(h.coeffs),
            "frontier": len(phi.frontier),
            "coefficients": [[list(z), q(c)] for z, c in sorted(h.coeffs.items())],
        })
    return items


def section_series(cfg: HornConfig, window: int, fb=None) -> dict:
    fb = fb or full_basis(cfg, window, _weights_rng(cfg, "series"))
    return {
        "window": window,
        "weight": list(fb.weight),
        "count": len(fb.series),
        "series": _series_payload(fb, cfg),
    }


def section_verify(cfg: HornConfig, window: int, fb=None) -> dict:
    fb = fb or full_basis(cfg, window, _weights_rng(cfg, "series"))
    rep = generic_rank(cfg)
    lattice = [verify_annihilation(s, A=cfg.A, c=cfg.c) for s in fb.series]
    horn = [verify_horn_series(h, cfg) for h in fb.horn]
    shrunk = []
    if window >= 2:
        from .series import build_phi

        shrunk = [verify_annihilation(build_phi(s.v, cfg.B, window - 2)) for s in fb.series]
    return {
        "series_count": len(fb.series),
        "puiseux_count": len(fb.puiseux),
        "total": fb.total,
        "rank": rep.rank,
        "total_equals_rank": fb.total == rep.rank,
        "euler_exact": all(r.euler_ok for r in lattice),
        "lattice_checked": sum(r.checked for r in lattice),
        "lattice_excluded": sum(r.excluded for r in lattice),
        "lattice_violations": sum(len(r.violations) for r in lattice),
        "horn_checked": sum(r.checked for r in horn),
        "horn_violations": sum(len(r.violations) for r in horn),
        "shrunk_window_violations": sum(len(r.violations) for r in shrunk),
        "puiseux_verified": all(verify_puiseux(p, cfg) for p in fb.puiseux),
        "basis_independent": basis_independent(fb),
        "exponent_classes_distinct": exponent_classes_distinct(fb.roots),
        "puiseux_disjoint_from_series": puiseux_disjoint_from_series(fb),
    }


def _run_once(job: JobSpec, cfg: HornConfig) -> dict:
    cmd = job.command
    res: dict = {}
    if cmd in ("rank", "all"):
        res["rank"] = section_rank(cfg)
    if cmd == "decompose":
        res["decompose"] = section_decompose(cfg)
    if cmd in ("identity", "all"):
        res["identity"] = section_identity(cfg)
    if cmd in ("psi", "all"):
        res["psi"] = section_psi(cfg)
    if cmd in ("puiseux", "all"):
        res["puiseux"] = section_puiseux(cfg)
    fb = None
    if cmd in ("series", "verify", "all"):
        fb = full_basis(cfg, job.window, _weights_rng(cfg, "series"))
    if cmd in ("series", "all"):
        res["series"] = section_series(cfg, job.window, fb)
    if cmd in ("verify", "all"):
        res["verify"] = section_verify(cfg, job.window, fb)
    if cmd == "all":
        v = res["verify"]
        res["cross_checks"] = {
            "rank": res["rank"]["rank"],
            "puiseux": res["puiseux"]["count"],
            "series": res["series"]["count"],
            "counts_consistent": v["total_equals_rank"]
            and res["puiseux"]["count"] == res["rank"]["puiseux_rank"],
            "identity": res["identity"]["holds"],
        }
    return res


@dataclass
class Report:
    data: dict
    exit_code: int = EXIT_OK
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def run(job: JobSpec) -> Report:
    """Run a job, resampling generic parameters on genericity failures."""
    events = []
    data = {
        "schema": SCHEMA,
        "command": job.command,
        "config_digest": _digest(job),
        "input": {
            "B": [list(r) for r in job.B],
            "c": job.c if job.c == "generic" else qvec(job.c),
            "convention": job.convention,
            "seed": job.seed,
            "window": job.window,
        },
    }
    t0 = time.perf_counter()
    attempts = job.resample_cap if job.c == "generic" else 1
    for attempt in range(attempts):
        cfg = job.config(attempt)
        try:
            res = _run_once(job, cfg)
        except GenericityFailure as exc:
            events.append({"attempt": attempt, "c": qvec(cfg.c), "reason": str(exc)})
            log.info("genericity failure on attempt %d: %s", attempt, exc)
            continue
        except ResourceExhausted as exc:
            data.update(genericity_log=events, error=str(exc), state=exc.state)
            return Report(data, EXIT_RESOURCES, {"seconds": time.perf_counter() - t0})
        data["parameters"] = {"falling_B": cfg.B.tolist(), "falling_c": qvec(cfg.c)}
        data["results"] = res
        data["genericity_log"] = events
        return Report(data, EXIT_OK, {"seconds": time.perf_counter() - t0})
    why = "genericity failure after resample cap" if job.c == "generic" else "genericity failure for the given c"
    data.update(genericity_log=events, error=why)
    return Report(data, EXIT_GENERICITY, {"seconds": time.perf_counter() - t0})


# -- text output ---------------------------------------------------------------

def render_text(report: Report) -> str:
    d = report.data
    lines = [f"command: {d['command']}  digest: {d['config_digest']}"]
    if "error" in d:
        lines.append(f"error: {d['error']}")
        return "\n".join(lines)
    res = d["results"]
    if "rank" in res:
        r = res["rank"]
        lines.append(f"rank: {r['rank']}  d1*d2: {r['d1d2']}  g: {r['g']}  puiseux rank: {r['puiseux_rank']}")
        if r.get("vol_A") is not None:
            lines.append(
                f"  {r['d1d2']} - {r['sum_dep_nu']} = {r['g']}*{r['vol_A']} + {r['sum_indep_nu']}"
            )
    if "identity" in res:
        lines.append(f"identity: {'holds' if res['identity']['holds'] else 'FAILS'}")
        for k, v in res["identity"]["checks"].items():
            lines.append(f"  {k}: {v}")
    if "decompose" in res:
        dd = res["decompose"]
        lines.append("I_B generators: " + ", ".join(dd["lattice_ideal"]))
        lines.append(f"#T(in_w I) = {dd['T_I']}  #top(in_w I_B) = {dd['top_pairs_IB']}")
    if "psi" in res:
        p = res["psi"]
        lines.append(f"compatible: {p['compatible']}")
        lines.append(f"Psi = {p['psi']}")
        if p["special_form"]:
            sf = p["special_form"]
            lines.append(f"f = {sf['f']}, g = {sf['g']}, resultant = {sf['resultant']}")
    if "puiseux" in res:
        lines.append(f"puiseux solutions: {res['puiseux']['count']}")
        for s in res["puiseux"]["solutions"]:
            lines.append(
                f"  pair {tuple(s['pair'])} base {tuple(s['base_point'])}: {s['text']}   [{s['ambient_text']}]"
            )
    if "series" in res:
        lines.append(f"series: {res['series']['count']} (window {res['series']['window']})")
        for s in res["series"]["series"]:
            lines.append(f"  v = ({', '.join(s['v'])})  terms: {s['terms']}")
    if "verify" in res:
        v = res["verify"]
        lines.append(
            f"verify: {v['series_count']} series + {v['puiseux_count']} puiseux = {v['total']} "
            f"(rank {v['rank']}); violations {v['lattice_violations']}/{v['horn_violations']}"
        )
    if d.get("genericity_log"):
        lines.append(f"resampled parameters {len(d['genericity_log'])} time(s)")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horn-rank", description="Rank and solutions of bivariate Horn systems.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file")
    p.add_argument("--seed", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--convention", choices=("falling", "rising"))
    p.add_argument("--json", dest="json_out")
    p.add_argument("--resample-cap", type=int)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        with open(args.file, encoding="utf-8") as fh:
            job = parse(fh.read(), args.command)
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.window is not None:
            overrides["window"] = args.window
        if args.convention is not None:
            overrides["convention"] = args.convention
        if args.resample_cap is not None:
            overrides["resample_cap"] = args.resample_cap
        if overrides:
            job = replace(job, **overrides)
            job.config()
    except (ParseError, InvariantError, OSError) as exc:
        print(f"horn-rank: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = run(job)
    except HornError as exc:
        print(f"horn-rank: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render_text(report))
    if args.verbose:
        print(f"elapsed: {report.timing.get('seconds', 0):.2f}s", file=sys.stderr)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
