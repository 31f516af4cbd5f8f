"""JSON codecs for matrices, representations, builder params and reports.

Input is validated with voluptuous; every ``vol.Invalid`` surfaces as
:class:`SchemaError`.
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Any

import voluptuous as vol

from .errors import SchemaError
from .exact import Partition, QMat
from .freealg import Automorphism, NormalPoly
from .imagealg import AlgebraDesc, QuiverDesc
from .repspace import PartitionParams, Rep, validate_rep
from .structure import AutoEquivalence, CanonicalPair, Decomposition, IsomorphismResult

_LOGGER = logging.getLogger(__name__)

_FRACTION = re.compile(r"-?\d+(/\d+)?")
_BLOCK_KEY = r"^\d+(,\d+)?$"


def canonical_fraction(value: Any) -> Fraction:
    """Parse "p" or "p/q" in lowest terms with positive q; anything else is rejected."""
    if not isinstance(value, str) or not _FRACTION.fullmatch(value):
        raise vol.Invalid(f"expected a fraction string, got {value!r}")
    try:
        parsed = Fraction(value)
    except ZeroDivisionError as err:
        raise vol.Invalid(f"zero denominator in {value!r}") from err
    if str(parsed) != value:
        raise vol.Invalid(f"non-canonical fraction {value!r}, expected {parsed}")
    return parsed


def _positive_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise vol.Invalid(f"expected a positive integer, got {value!r}")
    return value


QMAT_SCHEMA = vol.Schema(
    {
        vol.Required("rows"): _positive_int,
        vol.Required("cols"): _positive_int,
        vol.Required("entries"): [[canonical_fraction]],
    }
)

REP_SCHEMA = vol.Schema(
    {
        vol.Required("n"): _positive_int,
        vol.Optional("partition"): [_positive_int],
        vol.Required("X"): dict,
        vol.Required("Y"): dict,
    }
)

PARAMS_SCHEMA = vol.Schema(
    {
        vol.Optional("partition"): [_positive_int],
        vol.Required("lambda"): [canonical_fraction],
        vol.Optional("toeplitz", default={}): {vol.Match(_BLOCK_KEY): [canonical_fraction]},
    }
)


def _validate(schema: vol.Schema, data: Any) -> dict:
    try:
        return schema(data)
    except vol.Invalid as err:
        _LOGGER.debug("Schema rejected document at %s: %s", err.path, err.msg)
        raise SchemaError(str(err)) from err


# ---------------------------------------------------------------------------
# Matrices and representations
# ---------------------------------------------------------------------------


def encode_qmat(m: QMat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[str(v) for v in m.row(i)] for i in range(m.rows)]}


def decode_qmat(data: Any) -> QMat:
    checked = _validate(QMAT_SCHEMA, data)
    entries = checked["entries"]
    if len(entries) != checked["rows"] or any(len(row) != checked["cols"] for row in entries):
        raise SchemaError(f"entries do not form a {checked['rows']}x{checked['cols']} matrix")
    return QMat.from_rows(entries)


def encode_rep(r: Rep) -> dict:
    return {"n": r.n, "partition": list(r.partition.parts), "X": encode_qmat(r.X), "Y": encode_qmat(r.Y)}


def decode_rep(data: Any) -> Rep:
    """Validate the relation too; a stated partition must match Y's Jordan type."""
    checked = _validate(REP_SCHEMA, data)
    rep = validate_rep(decode_qmat(checked["X"]), decode_qmat(checked["Y"]))
    if rep.n != checked["n"]:
        raise SchemaError(f"n = {checked['n']} but matrices are {rep.n}x{rep.n}")
    if "partition" in checked and tuple(checked["partition"]) != rep.partition.parts:
        raise SchemaError(f"partition {checked['partition']} does not match Y of type {rep.partition}")
    return rep


def _partition(parts: list[int]) -> Partition:
    try:
        return Partition(tuple(parts))
    except ValueError as err:
        raise SchemaError(str(err)) from err


def decode_params(data: Any, partition: Partition | None = None) -> tuple[Partition, PartitionParams]:
    """Builder params; ``partition`` overrides the one in the document."""
    checked = _validate(PARAMS_SCHEMA, data)
    if partition is None:
        if "partition" not in checked:
            raise SchemaError("partition is required")
        partition = _partition(checked["partition"])
    toeplitz = {}
    for key, values in checked["toeplitz"].items():
        i, _, j = key.partition(",")
        toeplitz[(int(i), int(j or i))] = tuple(values)
    return partition, PartitionParams(lambdas=tuple(checked["lambda"]), toeplitz=toeplitz)


def encode_params(partition: Partition, params: PartitionParams) -> dict:
    toeplitz = {}
    for (i, j), values in sorted(params.toeplitz.items()):
        toeplitz[str(i) if i == j else f"{i},{j}"] = [str(v) for v in values]
    return {
        "partition": list(partition.parts),
        "lambda": [str(v) for v in params.lambdas],
        "toeplitz": toeplitz,
    }


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def encode_normal_poly(p: NormalPoly) -> dict:
    return {
        "text": str(p),
        "terms": [{"k": k, "l": l, "coeff": str(c)} for (k, l), c in p.terms],
    }


def encode_quiver(q: QuiverDesc) -> dict:
    return {"vertices": [str(v) for v in q.vertices], "arrows": [list(row) for row in q.arrows]}


def encode_algebra_desc(desc: AlgebraDesc) -> dict:
    return {
        "dim": desc.dim,
        "radical_dims": list(desc.radical_dims),
        **encode_quiver(desc.quiver),
    }


def encode_decomposition(d: Decomposition) -> dict:
    return {
        "eigenvalues": [str(v) for v in d.eigenvalues],
        "summands": [
            {
                "eigenvalue": str(s.eigenvalue),
                "basis": [[str(c) for c in v] for v in s.basis],
                "rep": encode_rep(s.rep),
            }
            for s in d.summands
        ],
        "conjugator": encode_qmat(d.conjugator),
    }


def encode_canonical_pair(pair: CanonicalPair) -> dict:
    return {"lambda": str(pair.lam), "mu": str(pair.mu), "conjugator": encode_qmat(pair.conjugator)}


def encode_automorphism(f: Automorphism) -> dict:
    return {"p": [str(v) for v in f.p], "c": str(f.c)}


def encode_isomorphism(result: IsomorphismResult) -> dict:
    return {
        "isomorphic": result.isomorphic,
        "reason": result.reason,
        "witness": encode_qmat(result.witness) if result.witness is not None else None,
    }


def encode_auto_equivalence(result: AutoEquivalence) -> dict:
    return {
        "equivalent": result.equivalent,
        "automorphism": encode_automorphism(result.automorphism) if result.automorphism else None,
        "conjugator": encode_qmat(result.conjugator) if result.conjugator is not None else None,
    }
