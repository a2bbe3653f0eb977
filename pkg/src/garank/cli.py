"""Command-line front end: ``garank COMMAND --signature p,q EXPR``.

Exit codes: 0 success, 1 parse or validation error, 2 math error (singular
input, matrix outside the image, failed ``verify``).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import linalg
from .algebra import Multivector, Signature, hermitian_conjugation, norm_squared
from .charpoly import faddeev_leverrier, inverse
from .coeff import EXACT, FLOAT
from .errors import MathError, ModeMismatchError, SignatureMismatchError, ValidationError
from .formatting import format_coefficient
from .matrep import (build_representation, matrix_charpoly, matrix_det, matrix_rank,
                     represent, svd_ga, trace_identity_holds)
from .parser import parse_and_evaluate
from .rank import DEFAULT_TOL, is_normal, rank
from .serialize import (charpoly_to_json, coefficient_to_json, dumps, load_multivector,
                        matrix_to_json, multivector_to_json, rank_result_to_json)

TOLERANCE_ENV = "GARANK_TOLERANCE"
VERIFY_RTOL = 1e-9

COMMANDS = ("rank", "det", "charpoly", "inverse", "norm", "svd", "normal", "repr", "verify", "eval")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tolerance(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive and finite, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("expression", nargs="?", help="multivector expression, e.g. \"e1 + 2*e12\"")
    common.add_argument("--signature", required=True, type=_signature, metavar="p,q")
    common.add_argument("--exact", action="store_true", help="Gaussian-rational arithmetic")
    common.add_argument("--tolerance", type=_tolerance, metavar="FLOAT",
                        help=f"zero-test tolerance (default {DEFAULT_TOL}, or ${TOLERANCE_ENV})")
    common.add_argument("--json-in", metavar="PATH", help="read the input multivector from JSON")
    common.add_argument("--json-out", metavar="PATH", help="also write the JSON result here")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="garank", description="Rank, determinant and friends for multivectors.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND",
                                parser_class=_Parser)
    helps = {
        "rank": "rank of the multivector",
        "det": "determinant",
        "charpoly": "characteristic coefficients C_1..C_N and determinant",
        "inverse": "inverse (exit 2 if singular)",
        "norm": "norm sqrt(<M^dagger M>_0)",
        "svd": "M = U Sigma V^dagger inside the algebra (float mode)",
        "normal": "whether M^dagger M == M M^dagger",
        "repr": "matrix representation",
        "verify": "cross-check the algebra results against the matrix oracle",
        "eval": "evaluate and print the expression",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _resolve_tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    env = os.environ.get(TOLERANCE_ENV)
    if env:
        try:
            return _tolerance(env)
        except argparse.ArgumentTypeError as exc:
            raise ValidationError(f"${TOLERANCE_ENV}: {exc}") from None
    return DEFAULT_TOL


def _load_input(args, mode: str) -> Multivector:
    if (args.expression is None) == (args.json_in is None):
        raise ValidationError("give exactly one of EXPRESSION or --json-in")
    if args.json_in is None:
        return parse_and_evaluate(args.expression, args.signature, mode)
    m = load_multivector(args.json_in)
    if m.signature != args.signature:
        raise SignatureMismatchError(
            f"{args.json_in} holds a {m.signature} multivector, --signature is {args.signature}")
    if m.mode != mode:
        raise ModeMismatchError(f"{args.json_in} is in {m.mode} mode but {mode} mode was requested"
                                " (toggle --exact)")
    return m


def _fmt(c) -> str:
    return format_coefficient(c)


def _fmt_norm(m: Multivector) -> tuple[str, dict]:
    n2 = norm_squared(m)
    value = math.sqrt(float(n2))
    data = {"norm": value}
    if m.mode == EXACT:
        data["norm2"] = coefficient_to_json(n2)["re"]
    return _fmt(value), data


# ---------------------------------------------------------------------------
# commands; each returns (text, json-able data, exit code)


def cmd_rank(m, tol):
    result = rank(m, tol)
    return f"rank {result.rank}\npath {result.path}", rank_result_to_json(result), 0


def cmd_det(m, tol):
    det = faddeev_leverrier(m).determinant
    return _fmt(det), {"det": coefficient_to_json(det)}, 0


def cmd_charpoly(m, tol):
    cp = faddeev_leverrier(m)
    lines = [f"C{k} {_fmt(c)}" for k, c in enumerate(cp.coeffs, start=1)]
    lines.append(f"det {_fmt(cp.determinant)}")
    return "\n".join(lines), charpoly_to_json(cp), 0


def cmd_inverse(m, tol):
    inv = inverse(m)
    return str(inv), multivector_to_json(inv), 0


def cmd_norm(m, tol):
    text, data = _fmt_norm(m)
    return text, data, 0


def cmd_svd(m, tol):
    if m.mode != FLOAT:
        raise ValidationError("svd is only available in float mode (drop --exact)")
    res = svd_ga(m)
    text = "\n".join([
        "singular values " + " ".join(_fmt(s) for s in res.singular_values),
        f"U = {res.U}",
        f"Sigma = {res.Sigma}",
        f"V = {res.V}",
    ])
    data = {
        "singular_values": list(res.singular_values),
        "U": multivector_to_json(res.U),
        "Sigma": multivector_to_json(res.Sigma),
        "V": multivector_to_json(res.V),
    }
    return text, data, 0


def cmd_normal(m, tol):
    flag = is_normal(m, tol)
    return ("normal" if flag else "not normal"), {"normal": flag}, 0


def cmd_repr(m, tol):
    a = represent(m)
    rows = [[_fmt(x) for x in row] for row in a]
    width = max(len(s) for row in rows for s in row)
    text = "\n".join("  ".join(s.rjust(width) for s in row) for row in rows)
    return text, matrix_to_json(a), 0


def cmd_eval(m, tol):
    return str(m), multivector_to_json(m), 0


def _close(a, b, scale: float) -> bool:
    return abs(complex(a) - complex(b)) <= VERIFY_RTOL * scale


def verify_checks(m: Multivector, tol: float = DEFAULT_TOL) -> list[tuple[str, bool, str]]:
    """Algebra-side results against the matrix oracle, one entry per check.

    Exact mode compares exactly. Float mode allows ``1e-9`` relative error
    with the scale of ``C_k`` taken as ``binom(N, k) s_max^k`` (s_max the
    largest singular value), and ``1e-9 * cond`` for the inverse residual.
    """
    exact = m.mode == EXACT
    rep = build_representation(m.signature)
    a = represent(m, rep)
    N = rep.N
    checks = []

    r_alg = rank(m, tol).rank
    r_mat = matrix_rank(a) if exact else matrix_rank(a, tol)
    checks.append(("rank", r_alg == r_mat, f"algebra {r_alg}, matrix {r_mat}"))

    cp = faddeev_leverrier(m)
    oracle = matrix_charpoly(a)
    if exact:
        ok = list(cp.coeffs) == list(oracle)
        det_ok = cp.determinant == matrix_det(a)
        smax = 1.0
    else:
        smax = float(linalg.singular_values(a)[0]) if m.terms else 0.0
        scales = [math.comb(N, k) * max(smax, 1e-300) ** k for k in range(1, N + 1)]
        ok = all(_close(x, y, s) for x, y, s in zip(cp.coeffs, oracle, scales))
        det_ok = _close(cp.determinant, matrix_det(a), scales[-1])
    worst = max((abs(complex(x) - complex(y)) for x, y in zip(cp.coeffs, oracle)), default=0.0)
    checks.append(("charpoly", ok, f"max |C_k - oracle| = {worst:.3e}"))
    checks.append(("det", det_ok, f"algebra {_fmt(cp.determinant)}, matrix {_fmt(matrix_det(a))}"))
    checks.append(("trace", trace_identity_holds(m, rep), "tr(beta(M)) = N <M>_0"))

    dag_ok = (represent(hermitian_conjugation(m), rep) == a.conj().T).all() if exact else \
        np.allclose(represent(hermitian_conjugation(m), rep), a.conj().T, rtol=0, atol=VERIFY_RTOL * max(smax, 1.0))
    checks.append(("dagger", bool(dag_ok), "beta(M^dagger) = beta(M)^H"))

    if r_mat == N:
        try:
            inv = represent(inverse(m), rep)
        except MathError as exc:
            checks.append(("inverse", False, str(exc)))
        else:
            if exact:
                prod = linalg.as_exact(a).dot(inv)
                ok = all(prod[i, j] == (1 if i == j else 0) for i in range(N) for j in range(N))
                checks.append(("inverse", ok, "beta(M) beta(M^-1) = I"))
            else:
                s = linalg.singular_values(a)
                cond = float(s[0] / s[-1])
                resid = float(np.linalg.norm(a @ inv - np.eye(N)))
                checks.append(("inverse", resid <= VERIFY_RTOL * cond * N,
                               f"||beta(M) beta(M^-1) - I|| = {resid:.3e}"))
    if not exact and m.terms:
        res = svd_ga(m, rep)
        resid = float(np.linalg.norm(represent(res.reconstruct(), rep) - a))
        checks.append(("svd", resid <= VERIFY_RTOL * max(smax, 1.0) * N,
                       f"||U Sigma V^dagger - M|| = {resid:.3e}"))
    return checks


def cmd_verify(m, tol):
    checks = verify_checks(m, tol)
    lines = [f"{'ok  ' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in checks]
    passed = all(ok for _, ok, _ in checks)
    lines.append("verified" if passed else "mismatch")
    data = {"verified": passed,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks]}
    return "\n".join(lines), data, 0 if passed else 2


HANDLERS = {
    "rank": cmd_rank, "det": cmd_det, "charpoly": cmd_charpoly, "inverse": cmd_inverse,
    "norm": cmd_norm, "svd": cmd_svd, "normal": cmd_normal, "repr": cmd_repr,
    "verify": cmd_verify, "eval": cmd_eval,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = _resolve_tolerance(args)
        mode = EXACT if args.exact else FLOAT
        m = _load_input(args, mode)
        text, data, code = HANDLERS[args.command](m, tol)
        if args.json_out:
            with open(args.json_out, "w") as fh:
                fh.write(dumps(data) + "\n")
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except MathError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    print(json.dumps(data, indent=2) if args.format == "json" else text, file=stdout)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
