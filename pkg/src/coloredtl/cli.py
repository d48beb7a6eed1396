"""Command-line front end: ``coloredtl <command> [options]``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import recoupling
from .cache import ENV_VAR, ProjectorCache, default_cache_dir
from .cell import (
    CellElement,
    basis_pairs,
    branching,
    cell_inner,
    from_skein,
    sequences,
    verify_cell_datum,
    weights,
)
from .jm import central_idempotent, ft_interpolation, jm_eigenvalue, jm_report
from .mahler import BivariatePoly, lawton_sequence, mahler_1var, mahler_2var, twist_convergence
from .ring import LaurentPoly
from .tangle import TangleSyntaxError, parse_tangle
from .twist import full_twist, jm_product, pair_power, twist_family

__all__ = ["main", "build_parser", "parse_polynomial"]


class UsageError(ValueError):
    pass


# -- polynomials on the command line ----------------------------------------

_MONO = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*((?:[Az](?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([Az])(?:\^(-?\d+))?")


def parse_polynomial(text: str) -> BivariatePoly:
    """Parse e.g. ``"A^2 - A - 1"`` or ``"1 + A + z"`` into exponent pairs ``(A, z)``."""
    coeffs: dict[tuple[int, int], Fraction] = {}
    pos = 0
    text = text.strip()
    if not text:
        raise UsageError("empty polynomial")
    first = True
    while pos < len(text):
        m = _MONO.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse polynomial near column {pos + 1}: {text[pos:]!r}")
        sign, num, body = m.group(1), m.group(2), m.group(3).strip()
        if sign is None and not first:
            raise UsageError(f"missing operator near column {pos + 1}")
        if num is None and not body:
            raise UsageError(f"empty term near column {pos + 1}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        a = b = 0
        for var, exp in _FACTOR.findall(body):
            e = int(exp) if exp else 1
            if var == "A":
                a += e
            else:
                b += e
        coeffs[(a, b)] = coeffs.get((a, b), 0) + c
        pos = m.end()
        first = False
    return BivariatePoly(coeffs)


# -- output -------------------------------------------------------------------


def _emit(args, payload, csv_rows: list[list] | None = None, header: list[str] | None = None, text: str | None = None):
    out = sys.stdout
    if args.format == "json":
        json.dump(payload, out, indent=2, sort_keys=True)
        out.write("\n")
    elif args.format == "csv" and csv_rows is not None:
        out.write(",".join(header) + "\n")
        for row in csv_rows:
            out.write(",".join(str(x) for x in row) + "\n")
    else:
        out.write((text if text is not None else json.dumps(payload, indent=2, sort_keys=True)) + "\n")


def _tangle_cell(args, k: int, i: int) -> tuple[CellElement, int | None]:
    expr = parse_tangle(args.tangle)
    x = expr.to_skein(k, i)
    writhe = expr.writhe()
    return from_skein(x, k, i), writhe


def _family(args):
    k, i = args.k, args.i
    T, writhe = _tangle_cell(args, k, i)
    base = args.base_writhe if args.base_writhe is not None else writhe
    if base is None:
        raise UsageError("tangle is not a braid; pass --base-writhe")
    per = args.writhe_per_twist if args.writhe_per_twist is not None else k * (k - 1)
    return twist_family(full_twist(k, i), T, per, base)


# -- commands -----------------------------------------------------------------


def cmd_basis(args) -> int:
    k, i = args.k, args.i
    by_weight = {w: [list(s.entries) for s in sequences(k, i, w)] for w in weights(k, i)}
    rows = [[w, " ".join(map(str, s))] for w, seqs in by_weight.items() for s in seqs]
    lines = [f"weights of TL_({k},{i}): {' '.join(map(str, weights(k, i)))}"]
    for w, seqs in by_weight.items():
        lines.append(f"  {w}: " + "  ".join("(" + ",".join(map(str, s)) + ")" for s in seqs))
    lines.append(f"dimension: {len(basis_pairs(k, i))}")
    lines.append(branching(k, i).render())
    _emit(
        args,
        {"k": k, "i": i, "weights": weights(k, i), "sequences": {str(w): v for w, v in by_weight.items()}},
        rows,
        ["weight", "sequence"],
        "\n".join(lines),
    )
    return 0


def cmd_gram(args) -> int:
    k, i = args.k, args.i
    pairs = basis_pairs(k, i)
    entries = []
    for s, t in pairs:
        g = CellElement.basis(s, t)
        entries.append({"s": list(s.entries), "t": list(t.entries), "norm": cell_inner(g, g).to_json()})
    text = "\n".join(f"<G[{e['s']},{e['t']}], same> = {cell_inner(CellElement.basis(s, t), CellElement.basis(s, t))}" for e, (s, t) in zip(entries, pairs))
    _emit(args, {"k": k, "i": i, "diagonal": entries, "off_diagonal": "zero"}, None, None, text)
    return 0


def _report(args, lines: list[str], extra: list[str] | None = None) -> int:
    shown = lines + (extra or [])
    _emit(args, {"report": shown}, [[ln] for ln in shown], ["line"], "\n".join(shown))
    return 0 if all(" PASS " in ln for ln in lines) else 1


def cmd_verify_cell(args) -> int:
    return _report(args, verify_cell_datum(args.k, args.i))


def cmd_jm(args) -> int:
    k, i = args.k, args.i
    spectra = []
    if args.format == "text":
        for w in weights(k, i):
            for s in sequences(k, i, w):
                vals = ", ".join(str(jm_eigenvalue(s, j)) for j in range(1, k + 1))
                spectra.append(f"{s}: {vals}")
    return _report(args, jm_report(k, i), spectra)


def cmd_idempotents(args) -> int:
    k, i = args.k, args.i
    seqs = [s for w in weights(k, i) for s in sequences(k, i, w)]
    payload = {
        "primitive": [{"t": list(t.entries), "element": ft_interpolation(t).to_records()} for t in seqs],
        "central": {str(w): central_idempotent(w, k, i).to_records() for w in weights(k, i)},
    }
    text = "\n".join(f"F_{t} = {ft_interpolation(t)}" for t in seqs)
    _emit(args, payload, None, None, text)
    return 0


def cmd_pair_power(args) -> int:
    k, i = args.k, args.i
    T, _ = _tangle_cell(args, k, i)
    R = jm_product([int(p) for p in args.powers.split(",")], k, i) if args.powers else full_twist(k, i)
    val = pair_power(R, T, args.m)
    _emit(args, {"k": k, "i": i, "n": args.m, "value": val.to_json()}, [[args.m, str(val)]], ["n", "value"], str(val))
    return 0


def cmd_jones_twist(args) -> int:
    fam = _family(args)
    J = fam.jones(args.m, args.normalize_unknot)
    _emit(
        args,
        {"m": args.m, "writhe": fam.writhe(args.m), "jones": J.to_triples(), "family": fam.to_json()},
        [[args.m, str(J)]],
        ["m", "jones"],
        str(J),
    )
    return 0


def cmd_mahler(args) -> int:
    f = parse_polynomial(args.poly)
    if all(b == 0 for _, b in f.coeffs):
        res = mahler_1var(LaurentPoly({a: c for (a, _), c in f.coeffs.items()}))
    else:
        res = mahler_2var(f, args.grid, args.method)
    payload = {"value": res.value, "method": res.method, "error_estimate": res.error_estimate, "meta": res.meta}
    _emit(args, payload, [[f"{res.value:.15g}", res.method, f"{res.error_estimate:.3g}"]], ["value", "method", "error_estimate"], f"{res.value:.15g}")
    return 0


def cmd_lawton(args) -> int:
    f = parse_polynomial(args.poly)
    rep = lawton_sequence(f, args.dmax, args.grid)
    if args.format == "json":
        _emit(args, {"rows": rep.rows, "limit": rep.limit.value, "tail_deviation": rep.tail_deviation})
    else:
        sys.stdout.write(rep.to_csv())
    return 0


def cmd_twist_converge(args) -> int:
    fam = _family(args)
    rep = twist_convergence(fam, args.mmax, args.grid)
    if args.format == "json":
        _emit(
            args,
            {
                "rows": [[m, v, None if dv != dv else dv] for m, v, dv in rep.rows],
                "limit": rep.limit.value,
                "limit_error_estimate": rep.limit.error_estimate,
                "final_deviation": rep.final_deviation,
            },
        )
    else:
        sys.stdout.write(rep.to_csv())
    return 0


COMMANDS = {
    "basis": cmd_basis,
    "gram": cmd_gram,
    "verify-cell": cmd_verify_cell,
    "jm": cmd_jm,
    "idempotents": cmd_idempotents,
    "pair-power": cmd_pair_power,
    "jones-twist": cmd_jones_twist,
    "mahler": cmd_mahler,
    "lawton": cmd_lawton,
    "twist-converge": cmd_twist_converge,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="number of coloured strands")
    common.add_argument("--i", type=int, default=1, help="colour of each strand")
    common.add_argument("--m", type=int, default=0, help="twist count or power")
    common.add_argument("--mmax", type=int, default=200)
    common.add_argument("--dmax", type=int, default=100)
    common.add_argument("--grid", type=int, default=2048)
    common.add_argument("--cache-dir", default=None, help=f"projector cache (default: ${ENV_VAR} or ~/.cache/coloredtl)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--writhe-per-twist", type=int, default=None)
    common.add_argument("--base-writhe", type=int, default=None)
    common.add_argument("--normalize-unknot", action="store_true")
    common.add_argument("--tangle", default="s1", help="tangle expression, e.g. 's1 s2^-1 e(1)'")
    common.add_argument("--powers", default=None, help="JM exponents p_2,...,p_k (default: full twist)")
    common.add_argument("--poly", default="1 + A + z", help="polynomial in A and z")
    common.add_argument("--method", choices=("jensen", "quadrature"), default="jensen")

    parser = argparse.ArgumentParser(prog="coloredtl", description="Coloured Temperley-Lieb algebras, twists and Mahler measures.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _validate(args) -> None:
    if args.k < 1 or args.i < 0:
        raise UsageError("need --k >= 1 and --i >= 0")
    if args.m < 0 or args.mmax < 1 or args.dmax < 1 or args.grid < 2:
        raise UsageError("--m must be >= 0; --mmax, --dmax >= 1; --grid >= 2")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        if not args.no_cache:
            recoupling.set_projector_cache(ProjectorCache(args.cache_dir or default_cache_dir()))
        return COMMANDS[args.command](args)
    except (UsageError, TangleSyntaxError, ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"coloredtl {args.command}: error: {exc}", file=sys.stderr)
        return 2
    finally:
        recoupling.set_projector_cache(None)


if __name__ == "__main__":
    sys.exit(main())
