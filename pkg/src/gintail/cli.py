"""Command-line front end and the ideal-file format.

File grammar (bit-exact):

    ring <k>            declares k variables x0..x(k-1); required first
    field q             optional; exact rationals (default)
    field fp <p>        optional; odd prime field, advisory mode
    gens:               then one generator expression per line

Expressions use integers, variable tokens x<digits>, the operators + - * ^
and parentheses; ^ binds tighter than * binds tighter than +/-; whitespace is
insignificant and # starts a comment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .borel import ek_betti, hilbert_function
from .errors import (GenericityError, GintailError, HypothesisError,
                     InhomogeneousError, InternalCheckError, NotBorelFixedError,
                     ParseError, RegularityError, SaturationRetryError,
                     UnitIdealError)
from .gin import compute_gin
from .groebner import buchberger
from .invariants import scheme_profile
from .ring import (Polynomial, PolyIdeal, PrimeField, QQ, RingCtx, mono_str)
from .tailing import build_tailing_report, vector_report

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


# ---------------------------------------------------------------------------
# ideal-file parsing
# ---------------------------------------------------------------------------

class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize_expr(src: str, line_no: int):
    toks = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("int", src[i:j], line_no, col))
            i = j
        elif ch == "x" and i + 1 < len(src) and src[i + 1].isdigit():
            j = i + 1
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("var", src[i:j], line_no, col))
            i = j
        elif ch in "+-*^()":
            toks.append(_Tok(ch, ch, line_no, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
    return toks


class _ExprParser:
    def __init__(self, toks, ring: RingCtx, line_no: int):
        self.toks = toks
        self.pos = 0
        self.ring = ring
        self.line = line_no

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.line)
        self.pos += 1
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        left = self.peek()
        if left is not None:
            raise ParseError(f"unexpected token {left.text!r}", left.line, left.col)
        return p

    def expr(self) -> Polynomial:
        node = self.term()
        while (t := self.peek()) is not None and t.kind in "+-":
            self.take()
            rhs = self.term()
            node = node + rhs if t.kind == "+" else node - rhs
        return node

    def term(self) -> Polynomial:
        node = self.factor()
        while (t := self.peek()) is not None and t.kind == "*":
            self.take()
            node = node * self.factor()
        return node

    def factor(self) -> Polynomial:
        t = self.peek()
        if t is not None and t.kind in "+-":
            self.take()
            inner = self.factor()
            return inner if t.kind == "+" else -inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if (t := self.peek()) is not None and t.kind == "^":
            self.take()
            e_tok = self.take()
            if e_tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer",
                                 e_tok.line, e_tok.col)
            e = int(e_tok.text)
            out = self.ring.constant(1)
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> Polynomial:
        t = self.take()
        if t.kind == "int":
            return self.ring.constant(int(t.text))
        if t.kind == "var":
            idx = int(t.text[1:])
            if idx >= self.ring.num_vars:
                raise ParseError(
                    f"unknown variable x{idx} (ring has x0..x{self.ring.num_vars - 1})",
                    t.line, t.col)
            return self.ring.variable(idx)
        if t.kind == "(":
            node = self.expr()
            close = self.take()
            if close.kind != ")":
                raise ParseError("expected ')'", close.line, close.col)
            return node
        raise ParseError(f"unexpected token {t.text!r}", t.line, t.col)


def parse_ideal(text: str, field_override=None) -> PolyIdeal:
    """Parse the ideal-file format into a homogeneous PolyIdeal."""
    ring = None
    field = None
    in_gens = False
    gens = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not in_gens:
            parts = line.split()
            if parts[0] == "ring":
                if ring is not None:
                    raise ParseError("duplicate ring declaration", line_no)
                if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise ParseError("ring declaration needs a positive variable count",
                                     line_no)
                ring = int(parts[1])
            elif parts[0] == "field":
                if parts[1:] == ["q"]:
                    field = QQ
                elif len(parts) == 3 and parts[1] == "fp" and parts[2].isdigit():
                    try:
                        field = PrimeField(int(parts[2]))
                    except ValueError as ex:
                        raise ParseError(str(ex), line_no) from None
                else:
                    raise ParseError("field must be 'q' or 'fp <odd prime>'", line_no)
            elif parts[0] == "gens:":
                if ring is None:
                    raise ParseError("ring must be declared before gens:", line_no)
                in_gens = True
            else:
                raise ParseError(f"unexpected directive {parts[0]!r}", line_no)
            continue
        ctx = RingCtx(ring, field_override or field or QQ)
        poly = _ExprParser(_tokenize_expr(raw, line_no), ctx, line_no).parse()
        if poly.is_zero:
            raise ParseError("generator simplifies to the zero polynomial", line_no)
        if not poly.is_homogeneous():
            raise ParseError(f"generator is not homogeneous: {poly}", line_no)
        gens.append(poly)
    if ring is None:
        raise ParseError("missing ring declaration")
    if not gens:
        raise ParseError("no generators given")
    ctx = RingCtx(ring, field_override or field or QQ)
    return PolyIdeal.make(ctx, gens)


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

def _frac_str(c) -> str:
    return str(c)


def _cert_dict(cert) -> dict:
    return {
        "generators": [mono_str(g) for g in cert.gin.min_gens],
        "num_vars": cert.gin.num_vars,
        "trial_seeds": list(cert.trial_seeds),
        "agreements": cert.agreements,
        "method": cert.method,
        "borel_verified": cert.borel_verified,
        "field": cert.field_mode,
        "certified": cert.certified,
        "hf_checked": cert.hf_checked,
        "warnings": list(cert.warnings),
    }


def _profile_dict(p) -> dict:
    return {
        "n": p.n,
        "dim": p.dim,
        "codim": p.codim,
        "degree": p.degree,
        "regularity": p.reg,
        "depth": p.depth,
        "pd": p.pd,
        "nd1": {str(j): ("PASS" if ok else "FAIL") for j, ok in p.nd1},
        "nd1_all": p.nd1_all,
        "is_3regular": p.is_3regular,
        "hilbert": {"chis": list(p.hilbert.chis), "text": str(p.hilbert)},
    }


def _betti_dict(table) -> dict:
    return {
        "rows": table.rows(),
        "max_col": table.max_col(),
        "max_row": table.max_row(),
        "codim_marker": table.codim_marker,
    }


def _bounds_dict(b) -> dict | None:
    if b is None:
        return None
    return {
        "mode": b.mode,
        "ok": b.ok,
        "details": [list(row) for row in b.details],
        "violations": list(b.violations),
    }


def _tailing_dict(rep) -> dict:
    from .tailing import xi_matrix
    coh = rep.cohomology
    return {
        "n": rep.n,
        "e": rep.e,
        "b": list(rep.b),
        "h": list(rep.h),
        "xi": [list(row) for row in xi_matrix(rep.n, rep.e).rows],
        "consistent": rep.consistent,
        "degree": rep.degree_genus.degree,
        "p_a": rep.degree_genus.p_a,
        "q": rep.degree_genus.q,
        "sectional_genus": rep.degree_genus.sectional_genus,
        "hilbert": {"chis": list(rep.reconstructed.chis), "text": str(rep.reconstructed)},
        "hilbert_match": rep.hilbert_match,
        "cohomology": {
            "h1": coh.h1, "h2": coh.h2, "h3_lower_raw": coh.h3_lower_raw,
            "h3_lower": coh.h3_lower, "h3_upper": coh.h3_upper,
            "h3_exact": coh.h3_exact,
        },
        "bounds": _bounds_dict(rep.bounds),
        "structure": None if rep.structure is None else {
            "passed": rep.structure.passed,
            "top_stratum_size": rep.structure.r,
            "failures": list(rep.structure.failures),
        },
        "forced": rep.forced,
        "warnings": list(rep.warnings),
    }


def _render_table(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key in ("schema", "betti_pretty"):
            continue
        if value is None:
            continue
        if isinstance(value, dict):
            lines.append(f"[{key}]")
            for k, v in value.items():
                _emit_kv(lines, k, v, indent=2)
        elif isinstance(value, list):
            lines.append(f"[{key}]")
            for item in value:
                lines.append(f"  {item}")
        else:
            lines.append(f"{key}: {value}")
    if "betti_pretty" in report:
        lines.append("[betti table]")
        lines.append(report["betti_pretty"])
    return "\n".join(lines) + "\n"


def _emit_kv(lines, key, value, indent):
    pad = " " * indent
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _emit_kv(lines, k, v, indent + 2)
    elif isinstance(value, list) and value and isinstance(value[0], (list, dict)):
        lines.append(f"{pad}{key}:")
        for v in value:
            lines.append(f"{pad}  {v}")
    else:
        lines.append(f"{pad}{key}: {value}")


def _write_report(report: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    else:
        text = _render_table(report)
    if out_path:
        d = os.path.dirname(os.path.abspath(out_path))
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".gintail-")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _parse_field_flag(text: str | None):
    if text is None:
        return None
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        return PrimeField(int(text[3:]))
    raise ParseError("--field must be q or fp:<odd prime>")


def _load(args) -> PolyIdeal:
    with open(args.ideal) as fh:
        text = fh.read()
    return parse_ideal(text, _parse_field_flag(args.field))


def _base_report(args, command: str) -> dict:
    return {"schema": "gintail-report/1", "command": command}


def cmd_gb(args) -> int:
    I = _load(args)
    basis = buchberger(I)
    report = _base_report(args, "gb")
    report["input"] = {"file": args.ideal, "num_vars": I.ring.num_vars,
                       "field": I.ring.field.name}
    report["gb"] = {
        "order": basis.order,
        "reduced": basis.reduced,
        "size": len(basis.elements),
        "elements": [str(g) for g in basis.elements],
    }
    report["warnings"] = []
    _write_report(report, args.format, args.out)
    return EXIT_OK


def _certificate(args, I: PolyIdeal):
    return compute_gin(I, seed=args.seed, trials=args.trials, bound=args.bound)


def cmd_gin(args) -> int:
    I = _load(args)
    cert = _certificate(args, I)
    report = _base_report(args, "gin")
    report["input"] = {"file": args.ideal, "num_vars": I.ring.num_vars,
                       "field": I.ring.field.name, "seed": args.seed,
                       "trials": args.trials}
    report["gin"] = _cert_dict(cert)
    report["warnings"] = list(cert.warnings)
    _write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_betti(args) -> int:
    I = _load(args)
    cert = _certificate(args, I)
    profile = scheme_profile(cert)
    table = ek_betti(cert.gin, codim_marker=profile.codim)
    report = _base_report(args, "betti")
    report["input"] = {"file": args.ideal, "seed": args.seed, "trials": args.trials}
    report["gin"] = _cert_dict(cert)
    report["betti"] = _betti_dict(table)
    report["betti_pretty"] = table.pretty()
    report["warnings"] = list(cert.warnings)
    _write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    I = _load(args)
    cert = _certificate(args, I)
    profile = scheme_profile(cert)
    report = _base_report(args, "invariants")
    report["input"] = {"file": args.ideal, "seed": args.seed, "trials": args.trials}
    report["profile"] = _profile_dict(profile)
    report["gin"] = _cert_dict(cert)
    report["warnings"] = list(cert.warnings)
    _write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_nd1(args) -> int:
    I = _load(args)
    cert = _certificate(args, I)
    profile = scheme_profile(cert)
    report = _base_report(args, "nd1")
    report["input"] = {"file": args.ideal, "seed": args.seed, "trials": args.trials}
    report["nd1"] = {str(j): ("PASS" if ok else "FAIL") for j, ok in profile.nd1}
    report["nd1_all"] = profile.nd1_all
    report["codim"] = profile.codim
    report["warnings"] = list(cert.warnings)
    _write_report(report, args.format, args.out)
    return EXIT_OK


def _parse_vec(text: str):
    return [int(v) for v in text.split(",") if v.strip() != ""]


def cmd_tailing(args) -> int:
    report = _base_report(args, "tailing")
    if args.b or args.h:
        if args.ideal:
            raise ParseError("give either an ideal file or literal vectors, not both")
        if args.n is None or args.e is None:
            raise ParseError("published-vector mode needs --n and --e")
        rep = vector_report(
            n=args.n, e=args.e,
            b=_parse_vec(args.b) if args.b else None,
            h=_parse_vec(args.h) if args.h else None,
            pd=args.pd)
        report["input"] = {"mode": "vectors", "n": args.n, "e": args.e,
                           "b": _parse_vec(args.b) if args.b else None,
                           "h": _parse_vec(args.h) if args.h else None,
                           "pd": args.pd}
        report["profile"] = None
    else:
        if not args.ideal:
            raise ParseError("tailing needs an ideal file or --b/--h vectors")
        I = _load(args)
        cert = _certificate(args, I)
        profile = scheme_profile(cert)
        rep = build_tailing_report(cert, profile, force=args.force)
        report["input"] = {"file": args.ideal, "seed": args.seed,
                           "trials": args.trials, "force": args.force}
        report["profile"] = _profile_dict(profile)
        report["gin"] = _cert_dict(cert)
    report["tailing"] = _tailing_dict(rep)
    report["warnings"] = list(rep.warnings)
    _write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    I = _load(args)
    cert = _certificate(args, I)
    profile = scheme_profile(cert)
    report = _base_report(args, "hilbert")
    report["input"] = {"file": args.ideal, "seed": args.seed, "trials": args.trials}
    direct = profile.hilbert
    report["hilbert"] = {
        "direct": {"chis": list(direct.chis), "text": str(direct)},
        "values": {str(t): hilbert_function(cert.gin, t)
                   for t in range(profile.reg + 3)},
    }
    try:
        rep = build_tailing_report(cert, profile, force=args.force)
        report["hilbert"]["from_tailing"] = {
            "chis": list(rep.reconstructed.chis), "text": str(rep.reconstructed)}
        report["hilbert"]["agreement"] = rep.hilbert_match
        report["warnings"] = list(rep.warnings)
    except HypothesisError as ex:
        report["hilbert"]["from_tailing"] = None
        report["hilbert"]["agreement"] = None
        report["warnings"] = [f"tailing route unavailable: {ex}"]
    _write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    from . import fixtures
    names = args.only.split(",") if args.only else None
    if names:
        unknown = [n for n in names if n not in fixtures.CORPUS]
        if unknown:
            raise ParseError(f"unknown fixture name(s): {', '.join(unknown)}; "
                             f"available: {', '.join(fixtures.CORPUS)}")
    results, ok = fixtures.run_corpus(names)
    report = _base_report(args, "corpus")
    report["fixtures"] = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name}  ({len(res.checks)} checks)")
        for label, check_ok, got, want in res.checks:
            if not check_ok:
                print(f"      MISMATCH {label}: got {got!r}, expected {want!r}")
        for note in res.notes:
            print(f"      note: {note}")
        report["fixtures"].append({
            "name": res.name,
            "passed": res.passed,
            "checks": [{"label": label, "ok": check_ok,
                        "got": repr(got), "expected": repr(want)}
                       for label, check_ok, got, want in res.checks],
            "notes": list(res.notes),
        })
    report["all_passed"] = ok
    if args.out:
        _write_report(report, "json", args.out)
    return EXIT_OK if ok else EXIT_REFUSED


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gintail",
        description="Generic initial ideals, Betti tables, and tailing "
                    "Betti / sectional 1-normality analysis, over exact rationals.")
    sub = top.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--out", default=None, help="write the report to this path")

    ideal_common = argparse.ArgumentParser(add_help=False, parents=[common])
    ideal_common.add_argument("--seed", type=int, default=42)
    ideal_common.add_argument("--trials", type=int, default=2)
    ideal_common.add_argument("--bound", type=int, default=1000,
                              help="coefficient bound for random changes")
    ideal_common.add_argument("--field", default=None,
                              help="override the file's field: q or fp:<odd prime>")
    ideal_common.add_argument("--force", action="store_true",
                              help="compute outside certified hypotheses, watermarked")

    p = sub.add_parser("gb", parents=[ideal_common],
                       help="reduced grevlex Groebner basis")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("gin", parents=[ideal_common],
                       help="certified generic initial ideal")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_gin)

    p = sub.add_parser("betti", parents=[ideal_common],
                       help="Eliahou-Kervaire Betti table of the Gin, tailing marked")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("invariants", parents=[ideal_common],
                       help="dimension, degree, regularity, depth, ND(1)")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("nd1", parents=[ideal_common],
                       help="per-dimension nondegeneracy of general sections")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_nd1)

    p = sub.add_parser("tailing", parents=[ideal_common],
                       help="tailing Betti / sectional normality report")
    p.add_argument("ideal", nargs="?", default=None)
    p.add_argument("--b", default=None, help="comma-separated tailing Betti vector")
    p.add_argument("--h", default=None, help="comma-separated sectional 1-normality vector")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--pd", type=int, default=None,
                   help="projective dimension, for the lower-bound check in vector mode")
    p.set_defaults(func=cmd_tailing)

    p = sub.add_parser("hilbert", parents=[ideal_common],
                       help="Hilbert polynomial by both routes")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("corpus", parents=[common],
                       help="run every bundled fixture against expected values")
    p.add_argument("--only", default=None, help="comma-separated fixture names")
    p.set_defaults(func=cmd_corpus)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisError, GenericityError, SaturationRetryError,
            RegularityError, NotBorelFixedError) as ex:
        print(f"refused: {ex}", file=sys.stderr)
        return EXIT_REFUSED
    except (ParseError, InhomogeneousError, UnitIdealError, OSError,
            ValueError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except InternalCheckError as ex:
        print(f"internal assertion failed: {ex}", file=sys.stderr)
        return EXIT_INTERNAL
    except GintailError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
