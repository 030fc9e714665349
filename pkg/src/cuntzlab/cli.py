"""Command-line interface.

Every command reads JSON spec files (see specio), prints a deterministic
markdown summary or a JSON document, and exits 0 on success, 1 on errors,
and 3 when --strict is set and the answer is unresolved.  Exact arithmetic
is the default whenever all inputs are Gaussian rationals; inputs with
inexact floats are accepted only under an explicit ``--mode float``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from math import inf

from .classify import (
    EquivalentToCuntz,
    LowerBoundOnly,
    Minimal,
    ProperlyInfinite,
    ShiftPeriod,
    cdim,
    decompose_spectrum_bucket,
    endo_invariants,
    equivalent,
    kappa,
    kappa_rep,
    pure,
    verify_properly_infinite,
)
from .errors import CuntzLabError
from .fcs import FCSPresentation, extract_fcs
from .moments import MomentFunctional
from .scalars import format_scalar, scalar_is_zero
from .specio import (
    certificate_to_json,
    dump_json,
    element_to_json,
    fcs_to_json,
    parse_spec,
    scalar_to_json,
    value_to_json,
)
from .symalg import CuntzElement
from .words import words_upto

__all__ = ["RunConfig", "run", "main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNRESOLVED = 3


@dataclass(frozen=True)
class RunConfig:
    """Flags shared by all commands."""

    mode: str = "auto"  # "auto" | "exact" | "float"
    tol: float | None = None
    max_level: int = 8
    cutoff: int = 12
    format: str = "md"  # "md" | "json"
    strict: bool = False
    seed: int | None = None


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------


def _word_str(J) -> str:
    if not J:
        return "()"
    if all(a <= 9 for a in J):
        return "".join(str(a) for a in J)
    return ".".join(str(a) for a in J)


def _element_str(x: CuntzElement) -> str:
    parts = []
    for (J, K), c in sorted(x.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], len(kv[0][1]), kv[0][1])):
        if scalar_is_zero(c, None):
            continue
        if not J and not K:
            body = "I"
        elif not K:
            body = f"s[{_word_str(J)}]"
        elif not J:
            body = f"s[{_word_str(K)}]*"
        else:
            body = f"s[{_word_str(J)}]s[{_word_str(K)}]*"
        coeff = format_scalar(c)
        parts.append(body if coeff == "1" else f"({coeff}) {body}")
    return " + ".join(parts) if parts else "0"


def _value_str(value) -> str:
    if value is None:
        return "unresolved"
    if value == inf:
        return "infinite"
    return str(value)


def _certificate_str(cert) -> str:
    if isinstance(cert, Minimal):
        return f"Minimal; u = {_element_str(cert.u)}"
    if isinstance(cert, ProperlyInfinite):
        if cert.status == "proved":
            return "ProperlyInfinite, proved"
        return f"ProperlyInfinite, evidence to cutoff {cert.cutoff}"
    if isinstance(cert, ShiftPeriod):
        return f"ShiftPeriod d={cert.d}"
    if isinstance(cert, EquivalentToCuntz):
        zs = ", ".join(format_scalar(c) for c in cert.z)
        return f"EquivalentToCuntz; z = ({zs}); provenance {cert.provenance}"
    if isinstance(cert, LowerBoundOnly):
        where = f" at level {cert.level}" if cert.level is not None else ""
        note = f"; {cert.note}" if cert.note else ""
        return f"LowerBoundOnly in [{cert.low}, {_value_str(cert.high)}]{where}{note}"
    return type(cert).__name__


def _cdim_str(res) -> str:
    levels = ", ".join(str(r) for r in res.level_ranks)
    if res.status == "stabilized":
        return f"cdim={res.value} (stabilized); levels {levels}"
    return f"cdim>={res.value} (lower bound at level {len(res.level_ranks) - 1}); levels {levels}"


def _require_state(obj, command: str) -> MomentFunctional:
    if not isinstance(obj, MomentFunctional):
        raise CuntzLabError(f"{command} expects a state spec, not a representation spec")
    return obj


def _emit(lines: list[str], doc, cfg: RunConfig) -> None:
    if cfg.format == "json":
        print(dump_json(doc))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_cdim(args, cfg: RunConfig) -> int:
    omega = _require_state(parse_spec(args.spec, cfg.mode, cfg.tol), "cdim")
    res = cdim(omega, cfg.max_level, cfg.tol)
    doc = {
        "cdim": {
            "value": res.value,
            "status": res.status,
            "levels": list(res.level_ranks),
            "pivot_words": [list(p) for p in res.pivot_words],
        }
    }
    lines = [_cdim_str(res)]
    if res.pivot_words:
        lines.append("pivot words: " + ", ".join(_word_str(p) for p in res.pivot_words))
    _emit(lines, doc, cfg)
    return EXIT_UNRESOLVED if cfg.strict and res.status != "stabilized" else EXIT_OK


def _kappa_doc(omega: MomentFunctional, cfg: RunConfig):
    res = kappa(omega, cfg.max_level, cfg.tol)
    cres = cdim(omega, cfg.max_level, cfg.tol)
    if cres.status == "stabilized":
        cdim_part = f"cdim {cres.value} (stabilized)"
    else:
        cdim_part = f"cdim lower bound {cres.value} at level {len(cres.level_ranks) - 1}"
    line = f"κ={_value_str(res.value)} ({_certificate_str(res.certificate)}); {cdim_part}"
    lines = [line]
    if (
        isinstance(res.certificate, ProperlyInfinite)
        and res.certificate.status == "evidence"
        and omega.properly_infinite is not None
    ):
        check = verify_properly_infinite(omega, cutoff=cfg.cutoff, tol=cfg.tol)
        lines.append(f"delta table re-checked to cutoff {cfg.cutoff}: status {check.status}")
    doc = {
        "kappa": {"value": value_to_json(res.value), **certificate_to_json(res.certificate)},
        "cdim": {"value": cres.value, "status": cres.status, "levels": list(cres.level_ranks)},
    }
    unresolved = res.value is None
    return res, lines, doc, unresolved


def _cmd_kappa(args, cfg: RunConfig) -> int:
    omega = _require_state(parse_spec(args.spec, cfg.mode, cfg.tol), "kappa")
    if args.search_certificates:
        res = kappa(omega, cfg.max_level, cfg.tol, search_certificates=True, search_depth=args.search_depth)
        line = f"κ={_value_str(res.value)} ({_certificate_str(res.certificate)})"
        doc = {"kappa": {"value": value_to_json(res.value), **certificate_to_json(res.certificate)}}
        _emit([line], doc, cfg)
        return EXIT_UNRESOLVED if cfg.strict and res.value is None else EXIT_OK
    res, lines, doc, unresolved = _kappa_doc(omega, cfg)
    _emit(lines, doc, cfg)
    return EXIT_UNRESOLVED if cfg.strict and unresolved else EXIT_OK


def _cmd_equiv(args, cfg: RunConfig) -> int:
    omega1 = _require_state(parse_spec(args.spec1, cfg.mode, cfg.tol), "equiv")
    omega2 = _require_state(parse_spec(args.spec2, cfg.mode, cfg.tol), "equiv")
    dec = equivalent(omega1, omega2, cfg.tol)
    _emit([f"{dec.verdict} ({dec.reason})"], {"verdict": dec.verdict, "reason": dec.reason}, cfg)
    return EXIT_UNRESOLVED if cfg.strict and dec.verdict == "Unknown" else EXIT_OK


def _cmd_pure(args, cfg: RunConfig) -> int:
    omega = _require_state(parse_spec(args.spec, cfg.mode, cfg.tol), "pure")
    dec = pure(omega, cfg.tol)
    _emit([f"{dec.verdict} ({dec.reason})"], {"verdict": dec.verdict, "reason": dec.reason}, cfg)
    return EXIT_UNRESOLVED if cfg.strict and dec.verdict == "Unknown" else EXIT_OK


def _cmd_moments(args, cfg: RunConfig) -> int:
    omega = _require_state(parse_spec(args.spec, cfg.mode, cfg.tol), "moments")
    words = list(words_upto(omega.n, args.level))
    rows = []
    doc_rows = []
    for J in words:
        for K in words:
            v = omega.moment(J, K)
            rows.append(f"| {_word_str(J)} | {_word_str(K)} | {format_scalar(v)} |")
            doc_rows.append({"J": list(J), "K": list(K), "value": scalar_to_json(v)})
    lines = [f"moments omega(s_J s_K*) up to level {args.level} (n={omega.n})", "", "| J | K | value |", "|---|---|---|"] + rows
    _emit(lines, {"n": omega.n, "level": args.level, "moments": doc_rows}, cfg)
    return EXIT_OK


def _cmd_fcs(args, cfg: RunConfig) -> int:
    omega = _require_state(parse_spec(args.spec, cfg.mode, cfg.tol), "fcs")
    out = extract_fcs(omega, cfg.max_level, cfg.tol)
    if isinstance(out, FCSPresentation):
        lines = [
            f"d={out.d}; pivot words: " + ", ".join(_word_str(p) for p in out.pivot_words),
            f"row relation sum_i A_i^H G A_i = G verified; stabilized at level {out.level}",
        ]
        _emit(lines, fcs_to_json(out), cfg)
        return EXIT_OK
    lines = [f"not finitely correlated within level {cfg.max_level}: rank >= {out.low} ({out.note})"]
    _emit(lines, {"lower_bound": out.low, "level": out.level, "note": out.note}, cfg)
    return EXIT_UNRESOLVED if cfg.strict else EXIT_OK


def _cmd_rep(args, cfg: RunConfig) -> int:
    rep = parse_spec(args.spec, cfg.mode, cfg.tol)
    if isinstance(rep, MomentFunctional):
        raise CuntzLabError("rep expects a representation spec, not a state spec")
    res = kappa_rep(rep, cfg.max_level, cfg.tol)
    invs = endo_invariants(rep)
    bucket = decompose_spectrum_bucket(rep, cfg.max_level, cfg.tol)
    lines = [
        f"κ={_value_str(res.value)} ({_certificate_str(res.certificate)})",
        f"endomorphism invariants: powers index {invs.powers_index}, κ {_value_str(invs.kappa)}",
        f"spectrum bucket: {bucket if bucket != inf else 'infinite'}",
    ]
    doc = {
        "kappa": {"value": value_to_json(res.value), **certificate_to_json(res.certificate)},
        "powers_index": invs.powers_index,
        "bucket": bucket if bucket != inf else "infinite",
    }
    _emit(lines, doc, cfg)
    return EXIT_UNRESOLVED if cfg.strict and res.value is None else EXIT_OK


def _cmd_selftest(args, cfg: RunConfig) -> int:
    from .selftest import run_all

    seed = cfg.seed
    if seed is None:
        seed = int(os.environ.get("CUNTZLAB_SEED", "20260814"))
    results = run_all(seed)
    lines = []
    doc_rows = []
    n_pass = 0
    for i, r in enumerate(results, 1):
        status = "PASS" if r.ok else "FAIL"
        n_pass += r.ok
        detail = f" - {r.detail}" if (r.detail and not r.ok) else ""
        lines.append(f"[{i:2d}/{len(results)}] {status} {r.name} ({r.seconds:.2f}s){detail}")
        doc_rows.append({"name": r.name, "ok": r.ok, "detail": r.detail, "seconds": round(r.seconds, 3)})
    ok = n_pass == len(results)
    lines.append(f"{n_pass} passed, {len(results) - n_pass} failed (seed {seed})")
    _emit(lines, {"ok": ok, "seed": seed, "results": doc_rows}, cfg)
    return EXIT_OK if ok else EXIT_ERROR


def _report_state(omega: MomentFunctional, cfg: RunConfig, label: str):
    cres = cdim(omega, cfg.max_level, cfg.tol)
    kres = kappa(omega, cfg.max_level, cfg.tol)
    pdec = pure(omega, cfg.tol)
    bucket = decompose_spectrum_bucket(omega, cfg.max_level, cfg.tol)
    doc = {
        "cdim": {"value": cres.value, "status": cres.status, "levels": list(cres.level_ranks)},
        "kappa": {"value": value_to_json(kres.value), **certificate_to_json(kres.certificate)},
        "pure": {"Pure": True, "NotPure": False}.get(pdec.verdict),
        "pure_reason": pdec.reason,
        "bucket": bucket if bucket != inf else "infinite",
    }
    lines = [
        f"## {label}",
        "",
        f"family: {omega.family} (n={omega.n}, {'exact' if omega.exact else 'float'})",
        _cdim_str(cres),
        f"κ={_value_str(kres.value)} ({_certificate_str(kres.certificate)})",
        f"purity: {pdec.verdict} ({pdec.reason})",
        f"spectrum bucket: {bucket if bucket != inf else 'infinite'}",
    ]
    for w in omega.warnings:
        lines.append(f"warning: {w}")
    unresolved = (
        cres.status != "stabilized"
        or kres.value is None
        or pdec.verdict == "Unknown"
        or bucket == "unresolved"
    )
    return doc, lines, unresolved


def _cmd_report(args, cfg: RunConfig) -> int:
    states = []
    for path in args.specs:
        states.append((path, _require_state(parse_spec(path, cfg.mode, cfg.tol), "report")))
    docs = []
    lines: list[str] = []
    unresolved = False
    for path, omega in states:
        doc, ls, u = _report_state(omega, cfg, path)
        docs.append(doc)
        lines.extend(ls)
        lines.append("")
        unresolved = unresolved or u
    if len(states) == 1:
        out_doc = docs[0]
    else:
        pairwise = []
        lines.append("## pairwise equivalence")
        lines.append("")
        for i in range(len(states)):
            for j in range(i + 1, len(states)):
                dec = equivalent(states[i][1], states[j][1], cfg.tol)
                pairwise.append({"i": i, "j": j, "verdict": dec.verdict, "reason": dec.reason})
                lines.append(f"{states[i][0]} vs {states[j][0]}: {dec.verdict} ({dec.reason})")
                unresolved = unresolved or dec.verdict == "Unknown"
        out_doc = {"states": docs, "pairwise": pairwise}
    _emit(lines, out_doc, cfg)
    return EXIT_UNRESOLVED if cfg.strict and unresolved else EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default=None,
                        help="arithmetic mode; default is exact whenever all inputs are Gaussian rational")
    common.add_argument("--tol", type=float, default=None, help="float-mode comparison tolerance")
    common.add_argument("--max-level", type=int, default=8, help="level cap for Gram growth (default 8)")
    common.add_argument("--cutoff", type=int, default=12, help="delta-table depth for evidence checks (default 12)")
    common.add_argument("--format", choices=["md", "json"], default="md", help="output format (default md)")
    common.add_argument("--strict", action="store_true", help="exit 3 when the answer is unresolved")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (overrides CUNTZLAB_SEED)")

    p = argparse.ArgumentParser(prog="cuntzlab",
                                description="Invariants of concretely parameterized states on Cuntz algebras")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("cdim", parents=[common], help="dimension of the conjugate-cyclic subspace")
    sp.add_argument("spec")
    sp.set_defaults(fn=_cmd_cdim)

    sp = sub.add_parser("kappa", parents=[common], help="minimal cdim over the equivalence class, with certificate")
    sp.add_argument("spec")
    sp.add_argument("--search-certificates", action="store_true",
                    help="search saturated prefix codes for a minimality certificate")
    sp.add_argument("--search-depth", type=int, default=3, help="depth of the certificate search (default 3)")
    sp.set_defaults(fn=_cmd_kappa)

    sp = sub.add_parser("equiv", parents=[common], help="decide equivalence of two states")
    sp.add_argument("spec1")
    sp.add_argument("spec2")
    sp.set_defaults(fn=_cmd_equiv)

    sp = sub.add_parser("pure", parents=[common], help="decide purity of a state")
    sp.add_argument("spec")
    sp.set_defaults(fn=_cmd_pure)

    sp = sub.add_parser("moments", parents=[common], help="table of moments omega(s_J s_K*)")
    sp.add_argument("spec")
    sp.add_argument("--level", type=int, default=2, help="maximum word length (default 2)")
    sp.set_defaults(fn=_cmd_moments)

    sp = sub.add_parser("fcs", parents=[common], help="finitely correlated presentation (d, A, omega, metric)")
    sp.add_argument("spec")
    sp.set_defaults(fn=_cmd_fcs)

    sp = sub.add_parser("rep", parents=[common], help="invariants of a permutative representation")
    sp.add_argument("spec")
    sp.set_defaults(fn=_cmd_rep)

    sp = sub.add_parser("selftest", parents=[common], help="run the built-in acceptance checks")
    sp.set_defaults(fn=_cmd_selftest)

    sp = sub.add_parser("report", parents=[common], help="full report; several specs add a pairwise matrix")
    sp.add_argument("specs", nargs="+")
    sp.set_defaults(fn=_cmd_report)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        mode=args.mode or "auto",
        tol=args.tol,
        max_level=args.max_level,
        cutoff=args.cutoff,
        format=args.format,
        strict=args.strict,
        seed=args.seed,
    )
    try:
        return args.fn(args, cfg)
    except CuntzLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
