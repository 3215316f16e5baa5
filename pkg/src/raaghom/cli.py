"""Command-line front end: parse inputs, run one job, emit one report.

Reports are byte-deterministic for identical inputs: JSON is emitted with
sorted keys, rationals as "p/q" strings, and no timestamps.  Exit status
is 0 on success, 1 on a precondition failure, 2 on malformed input; the
diagnostic goes to stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .complexes import SimplicialComplex
from .exact import ExactMatrix, FieldSpec, rank
from .fibring import (
    CoefficientRing,
    find_characters,
    kaz_inequality_check,
    virtually_fpn_fibred,
)
from .kernels import Character, InconsistencyError, PreconditionError, fpn_violation, kernel_betti
from .raags import FiniteQuotient, Raag, abelian_quotient, cover_betti

CACHE_ENV = "AGRARIAN_CACHE"


class InputError(Exception):
    """Malformed input: missing file, bad JSON, unknown token (exit 2)."""


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def _parse_complex(path: str) -> SimplicialComplex:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError(f"{path}: expected an object with a 'vertices' key")
    try:
        return SimplicialComplex.from_json_dict(obj)
    except (ValueError, TypeError) as e:
        raise InputError(f"{path}: {e}") from e


def _parse_field(token: str) -> FieldSpec:
    try:
        return FieldSpec.from_token(token)
    except ValueError as e:
        raise InputError(str(e)) from e


def _parse_ring(token: str) -> CoefficientRing:
    try:
        return CoefficientRing.from_token(token)
    except ValueError as e:
        raise InputError(str(e)) from e


def _parse_degrees(spec: str) -> list[int]:
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(spec)
    except ValueError as e:
        raise InputError(f"bad degree range {spec!r}") from e
    if lo_i < 0 or hi_i < lo_i:
        raise InputError(f"bad degree range {spec!r}")
    return list(range(lo_i, hi_i + 1))


def _vertex_lookup(K: SimplicialComplex) -> dict[str, object]:
    return {str(v): v for v in K.vertices}


def _parse_character(path: str, K: SimplicialComplex) -> Character:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "phi" not in obj or not isinstance(obj["phi"], dict):
        raise InputError(f"{path}: expected an object with a 'phi' mapping")
    lookup = _vertex_lookup(K)
    values = {}
    for key, val in obj["phi"].items():
        if key not in lookup:
            raise InputError(f"{path}: unknown vertex {key!r}")
        values[lookup[key]] = int(val)
    try:
        return Character(K, values)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e


def _parse_quotient(obj: dict, A: Raag, source: str) -> FiniteQuotient:
    kind = obj.get("type")
    lookup = _vertex_lookup(A.complex)
    try:
        if kind == "abelian":
            moduli = {lookup[k]: int(v) for k, v in obj.get("moduli", {}).items()}
            return abelian_quotient(A, moduli)
        if kind == "explicit":
            action = {lookup[k]: [int(x) for x in perm] for k, perm in obj.get("action", {}).items()}
            return FiniteQuotient(A, int(obj["order"]), action)
    except KeyError as e:
        raise InputError(f"{source}: unknown vertex {e}") from e
    except ValueError as e:
        raise InputError(f"{source}: {e}") from e
    raise InputError(f"{source}: quotient type must be 'abelian' or 'explicit'")


def _parse_chain(spec: str, A: Raag) -> list[FiniteQuotient]:
    """Either ``abelian:2,3,4`` (all-vertex moduli) or a comma list of JSON files."""
    if spec.startswith("abelian:"):
        try:
            ns = [int(x) for x in spec[len("abelian:") :].split(",") if x]
        except ValueError as e:
            raise InputError(f"bad chain spec {spec!r}") from e
        if not ns or any(n < 1 for n in ns):
            raise InputError(f"bad chain spec {spec!r}")
        return [abelian_quotient(A, {v: n for v in A.complex.vertices}) for n in ns]
    quotients = []
    for path in spec.split(","):
        obj = _load_json(path)
        if not isinstance(obj, dict):
            raise InputError(f"{path}: expected a quotient object")
        quotients.append(_parse_quotient(obj, A, path))
    return quotients


# ---------------------------------------------------------------------------
# rank cache
# ---------------------------------------------------------------------------


def _cache_dir(args) -> Optional[Path]:
    if getattr(args, "cache", None):
        return Path(args.cache)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def _cached_rank_hook(cache: Optional[Path], job_key: str):
    """Memoise (job-key, degree) -> rank as small JSON files on disk."""
    if cache is None:
        return None
    cache.mkdir(parents=True, exist_ok=True)

    def hook(degree: int, matrix: ExactMatrix) -> int:
        digest = hashlib.sha256(f"{job_key}:{degree}".encode()).hexdigest()
        path = cache / f"rank-{digest}.json"
        if path.exists():
            try:
                return int(json.loads(path.read_text())["rank"])
            except (ValueError, KeyError, json.JSONDecodeError):
                pass
        r = rank(matrix)
        _atomic_write(path, json.dumps({"rank": r}) + "\n")
        return r

    return hook


def _job_key(*parts: str) -> str:
    return hashlib.sha256("\x1f".join(parts).encode()).hexdigest()


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        _atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def _json_report(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_betti(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    degrees = _parse_degrees(args.degrees)
    if not K.is_flag():
        raise PreconditionError("complex is not flag; Betti numbers of the group need a flag complex")
    A = Raag(K)
    from .raags import dfg_betti_raag

    values = [dfg_betti_raag(A, field, k) for k in degrees]
    if args.format == "csv":
        lines = ["degree,dfg_betti"] + [f"{k},{v}" for k, v in zip(degrees, values)]
        return "\n".join(lines) + "\n"
    return _json_report({"field": field.token(), "degrees": degrees, "dfg_betti": values})


def _cmd_kernel_betti(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    degrees = _parse_degrees(args.degrees)
    phi = _parse_character(args.phi, K)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    values = [
        kernel_betti(K, phi, m, field, enforce=not args.force) for m in degrees
    ]
    if args.format == "csv":
        lines = ["degree,kernel_betti"] + [f"{k},{v}" for k, v in zip(degrees, values)]
        return "\n".join(lines) + "\n"
    return _json_report(
        {
            "field": field.token(),
            "degrees": degrees,
            "kernel_betti": values,
            "phi": phi.to_json_dict()["phi"],
        }
    )


def _cmd_fpn_check(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    phi = _parse_character(args.phi, K)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    bad = fpn_violation(K, phi, args.n, field)
    return _json_report(
        {
            "field": field.token(),
            "n": args.n,
            "fpn": bad is None,
            "violating_dead_simplex": None if bad is None else [str(v) for v in bad],
        }
    )


def _cmd_fibring(args) -> str:
    K = _parse_complex(args.complex)
    ring = _parse_ring(args.ring)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    report = virtually_fpn_fibred(K, args.n, ring)
    return _json_report(report.to_json_dict())


def _cmd_gradient(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    A = Raag(K)
    chain = _parse_chain(args.chain, A)
    cache = _cache_dir(args)
    rows = []
    for q in chain:
        hook = _cached_rank_hook(
            cache,
            _job_key(
                json.dumps(K.to_json_dict(), sort_keys=True, default=str),
                json.dumps(q.to_json_dict(), sort_keys=True),
                field.token(),
            ),
        )
        report = cover_betti(A, q, field, rank_hook=hook)
        b = report.betti[args.degree] if args.degree < len(report.betti) else 0
        rows.append((q.order, b, Fraction(b, q.order)))
    if args.format == "csv":
        lines = [f"N,b_{args.degree},b_{args.degree}/N"]
        lines += [f"{n},{b},{_frac(v)}" for n, b, v in rows]
        return "\n".join(lines) + "\n"
    return _json_report(
        {
            "field": field.token(),
            "degree": args.degree,
            "orders": [n for n, _, _ in rows],
            "betti": [b for _, b, _ in rows],
            "normalized": [_frac(v) for _, _, v in rows],
        }
    )


def _cmd_characters(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    chars = find_characters(K, args.n, field, args.bound)
    return _json_report(
        {
            "field": field.token(),
            "n": args.n,
            "bound": args.bound,
            "characters": [c.to_json_dict()["phi"] for c in chars],
        }
    )


def _cmd_kaz_check(args) -> str:
    K = _parse_complex(args.complex)
    field = _parse_field(args.field)
    if not K.is_flag():
        raise PreconditionError("complex is not flag")
    A = Raag(K)
    chain = _parse_chain(args.quotients, A)
    holds = kaz_inequality_check(A, chain, field, args.max_degree)
    return _json_report(
        {
            "field": field.token(),
            "max_degree": args.max_degree,
            "orders": [q.order for q in chain],
            "holds": holds,
        }
    )


def _cmd_report(args) -> tuple[int, str]:
    from . import acceptance

    numbers = None
    if args.criteria:
        try:
            numbers = [int(x) for x in args.criteria.split(",")]
        except ValueError as e:
            raise InputError(f"bad criteria list {args.criteria!r}") from e
    results = acceptance.run(numbers=numbers, seed=args.seed)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"criterion {r.number:02d} {r.name}: {status}  {r.detail}")
    n_fail = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return (1 if n_fail else 0), "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raaghom",
        description="Homological invariants of right-angled Artin groups and their kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, fmt=True):
        p.add_argument("--out", help="write the report to this path (default: stdout)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("betti", help="closed-form Betti numbers of the RAAG on a flag complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--degrees", required=True, help="e.g. 0..3")
    common(p)
    p.set_defaults(run=_cmd_betti)

    p = sub.add_parser("kernel-betti", help="closed-form Betti numbers of an Artin kernel")
    p.add_argument("--complex", required=True)
    p.add_argument("--phi", required=True, help="character JSON file")
    p.add_argument("--field", required=True)
    p.add_argument("--degrees", required=True)
    p.add_argument("--force", action="store_true", help="skip the FP_n/surjectivity preconditions")
    common(p)
    p.set_defaults(run=_cmd_kernel_betti)

    p = sub.add_parser("fpn-check", help="decide FP_n of an Artin kernel")
    p.add_argument("--complex", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(run=_cmd_fpn_check)

    p = sub.add_parser("fibring", help="virtual FP_n fibring verdict over a ring")
    p.add_argument("--complex", required=True)
    p.add_argument("--ring", required=True, help="Q, F2, ..., Z, or Z/6")
    p.add_argument("--n", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(run=_cmd_fibring)

    p = sub.add_parser("gradient", help="normalised cover Betti numbers along a quotient chain")
    p.add_argument("--complex", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--chain", required=True, help="abelian:2,3,4 or quotient JSON files")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--cache", help=f"rank cache directory (default: ${CACHE_ENV})")
    common(p)
    p.set_defaults(run=_cmd_gradient)

    p = sub.add_parser("characters", help="surjective characters passing FP_n, up to a bound")
    p.add_argument("--complex", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(run=_cmd_characters)

    p = sub.add_parser("kaz-check", help="closed form <= normalised cover Betti, per quotient")
    p.add_argument("--complex", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--quotients", required=True, help="abelian:... or quotient JSON files")
    p.add_argument("--max-degree", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(run=_cmd_kaz_check)

    p = sub.add_parser("report", help="run the acceptance suite and print a pass/fail table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--criteria", help="comma list of criterion numbers (default: all)")
    common(p, fmt=False)
    p.set_defaults(run=_cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.run(args)
    except InputError as e:
        sys.stderr.write(json.dumps({"error": {"kind": "input", "message": str(e)}}) + "\n")
        return 2
    except (PreconditionError, InconsistencyError, ValueError) as e:
        sys.stderr.write(json.dumps({"error": {"kind": "precondition", "message": str(e)}}) + "\n")
        return 1
    if isinstance(result, tuple):
        code, text = result
    else:
        code, text = 0, result
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
