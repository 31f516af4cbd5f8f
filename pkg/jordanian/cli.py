"""Command-line front end.

Every subcommand prints one JSON document on stdout (or a short text
rendering with ``--format text``); logs go to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import random
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Any

import voluptuous as vol

from .checks import run_suites
from .const import (
    ALL_SUITES,
    DEFAULT_MAX_N,
    DEFAULT_SEED,
    DOMAIN,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    EXIT_USAGE,
)
from .errors import JordanianError, ParseError, SchemaError
from .exact import Partition
from .freealg import parse_normal
from .imagealg import describe_algebra, quiver
from .repspace import FullBlockParams, PartitionParams, build_from_partition, evaluate
from .schema import (
    canonical_fraction,
    decode_params,
    decode_rep,
    encode_algebra_desc,
    encode_auto_equivalence,
    encode_canonical_pair,
    encode_decomposition,
    encode_isomorphism,
    encode_normal_poly,
    encode_qmat,
    encode_quiver,
    encode_rep,
)
from .structure import are_isomorphic, auto_equivalent_full_block, canonical_full_block, decompose, jacobian_rank

_LOGGER = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad command-line arguments that argparse itself cannot detect."""


def _read_json(source: str) -> Any:
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{source}: invalid JSON ({err.msg})") from err


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as err:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from err


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [canonical_fraction(part.strip()) for part in text.split(",")]
    except vol.Invalid as err:
        raise UsageError(f"expected comma-separated fractions, got {text!r}") from err


def _size(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from err
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {value}")
    return value


def _partition(text: str) -> Partition:
    try:
        return Partition(tuple(_int_list(text)))
    except ValueError as err:
        raise UsageError(str(err)) from err


# ---------------------------------------------------------------------------
# Subcommands; each returns (payload, text rendering, exit code)
# ---------------------------------------------------------------------------

Result = tuple[Any, str, int]


def cmd_nf(args: argparse.Namespace) -> Result:
    normal = parse_normal(args.poly)
    return encode_normal_poly(normal), str(normal), EXIT_OK


def cmd_build(args: argparse.Namespace) -> Result:
    if args.params:
        override = _partition(args.partition) if args.partition else None
        partition, params = decode_params(_read_json(args.params), override)
    else:
        if not args.partition:
            raise UsageError("--partition or --params is required")
        partition = _partition(args.partition)
        lambdas = _fraction_list(args.lam) if args.lam else [Fraction(0)] * len(partition.parts)
        params = PartitionParams(lambdas=tuple(lambdas))
    rep = build_from_partition(partition, params)
    return encode_rep(rep), str(rep), EXIT_OK


def cmd_validate(args: argparse.Namespace) -> Result:
    rep = decode_rep(_read_json(args.rep))
    return encode_rep(rep), f"valid, Y-type {rep.partition}", EXIT_OK


def cmd_eval(args: argparse.Namespace) -> Result:
    image = evaluate(parse_normal(args.poly), decode_rep(_read_json(args.rep)))
    return encode_qmat(image), "\n".join(" ".join(str(v) for v in image.row(i)) for i in range(image.rows)), EXIT_OK


def cmd_image(args: argparse.Namespace) -> Result:
    desc = describe_algebra(decode_rep(_read_json(args.rep)))
    return encode_algebra_desc(desc), f"dim {desc.dim}, radical {list(desc.radical_dims)}", EXIT_OK


def cmd_quiver(args: argparse.Namespace) -> Result:
    q = quiver(decode_rep(_read_json(args.rep)))
    lines = [
        f"{q.vertices[i]} -> {q.vertices[j]}: {count}"
        for i, row in enumerate(q.arrows)
        for j, count in enumerate(row)
        if count
    ]
    return encode_quiver(q), "\n".join(lines) or "no arrows", EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> Result:
    d = decompose(decode_rep(_read_json(args.rep)))
    text = ", ".join(f"{s.eigenvalue}: dim {s.rep.n}" for s in d.summands)
    return encode_decomposition(d), text, EXIT_OK


def cmd_canon(args: argparse.Namespace) -> Result:
    pair = canonical_full_block(decode_rep(_read_json(args.rep)))
    return encode_canonical_pair(pair), f"lambda={pair.lam} mu={pair.mu}", EXIT_OK


def cmd_iso(args: argparse.Namespace) -> Result:
    result = are_isomorphic(decode_rep(_read_json(args.rep)), decode_rep(_read_json(args.other)), seed=args.seed)
    return encode_isomorphism(result), f"{result.isomorphic} ({result.reason})", EXIT_OK


def cmd_autoeq(args: argparse.Namespace) -> Result:
    result = auto_equivalent_full_block(decode_rep(_read_json(args.rep)), decode_rep(_read_json(args.other)))
    return encode_auto_equivalence(result), f"equivalent: {result.equivalent}", EXIT_OK


def cmd_jacobian(args: argparse.Namespace) -> Result:
    rng = random.Random(args.seed)
    if args.params:
        values = _fraction_list(args.params)
        params = FullBlockParams(lam=values[0], c=tuple(values[1:]))
    else:
        params = FullBlockParams(c=(Fraction(0),) * (args.n - 1))
    got = jacobian_rank(args.n, params, rng=rng)
    payload = {"n": args.n, "rank": got, "expected": args.n - 2}
    return payload, f"rank {got} (expected {args.n - 2})", EXIT_OK if got == args.n - 2 else EXIT_PROPERTY_FAILURE


def cmd_check(args: argparse.Namespace) -> Result:
    names = None if args.suite == "all" else [args.suite]
    reports = asyncio.run(run_suites(names, seed=args.seed, max_n=args.max_n))
    payload = {
        "seed": args.seed,
        "max_n": args.max_n,
        "passed": all(r.passed for r in reports),
        "suites": [asdict(r) for r in reports],
    }
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checked} checks)" for r in reports)
    return payload, text, EXIT_OK if payload["passed"] else EXIT_PROPERTY_FAILURE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=DOMAIN, description="Exact computations in k<x,y>/(xy - yx - y^2).")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], Result], help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        command.set_defaults(handler=handler)
        return command

    add("nf", cmd_nf, "normal form of a polynomial").add_argument("poly")

    build = add("build", cmd_build, "build a representation in standard shape")
    build.add_argument("--partition", help="Jordan type of Y, e.g. 3,1")
    build.add_argument("--lambda", dest="lam", help="eigenvalue per block, e.g. 0,1/2")
    build.add_argument("--params", help="builder params JSON file or -")

    add("validate", cmd_validate, "validate a representation").add_argument("--rep", required=True)

    evaluate_cmd = add("eval", cmd_eval, "image of a polynomial")
    evaluate_cmd.add_argument("--poly", required=True)
    evaluate_cmd.add_argument("--rep", required=True)

    add("image", cmd_image, "describe the image algebra").add_argument("--rep", required=True)
    add("quiver", cmd_quiver, "quiver of the image algebra").add_argument("--rep", required=True)
    add("decompose", cmd_decompose, "split by eigenvalues of X").add_argument("--rep", required=True)
    add("canon", cmd_canon, "canonical pair of a full-block representation").add_argument("--rep", required=True)

    iso = add("iso", cmd_iso, "isomorphism test")
    iso.add_argument("--rep", required=True)
    iso.add_argument("--other", required=True)
    iso.add_argument("--seed", type=int, default=DEFAULT_SEED)

    autoeq = add("autoeq", cmd_autoeq, "auto-equivalence of full-block representations")
    autoeq.add_argument("--rep", required=True)
    autoeq.add_argument("--other", required=True)

    jacobian = add("jacobian", cmd_jacobian, "Jacobian rank on the full-block stratum")
    jacobian.add_argument("--n", type=_size, required=True)
    jacobian.add_argument("--params", help="lambda,c1,...,c_{n-1}")
    jacobian.add_argument("--seed", type=int, default=DEFAULT_SEED)

    check = add("check", cmd_check, "run acceptance suites")
    check.add_argument("suite", choices=("all", *ALL_SUITES))
    check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    check.add_argument("--max-n", type=_size, default=DEFAULT_MAX_N)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        payload, text, code = args.handler(args)
    except (ParseError, SchemaError, UsageError, OSError) as err:
        _LOGGER.error("%s", err)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except JordanianError as err:
        _LOGGER.error("%s", err)
        print(f"error [{err.code}]: {err}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    print(json.dumps(payload) if args.format == "json" else text)
    return code
