import logging
from pathlib import Path
from typing import Union

import numpy as np

from field import DomainError, FormatError, GuardExceeded, lucas_binomial
from symmetric import MultiIndexPolynomial, SymmetricSpec, eval_symmetric_many

from .finite_function import CHUNK, DENSE_CAP, FiniteFunction, points_of, space_size
from .truth_table import read_table

logger = logging.getLogger(__name__)

Descriptor = Union[str, SymmetricSpec, MultiIndexPolynomial, FiniteFunction]

MODES = ("auto", "dense", "lazy")


def _symmetric_function(spec: SymmetricSpec, dense: bool) -> FiniteFunction:
    name = f"S_{spec.n}"
    if dense and spec.p == 2:
        lut = np.array([lucas_binomial(w, spec.n, 2).value for w in range(spec.N + 1)],
                       dtype=np.uint8)
        weights = np.bitwise_count(np.arange(space_size(2, spec.N), dtype=np.uint64))
        return FiniteFunction.dense(2, spec.N, lut[weights], symmetric=True, name=name)
    lazy = FiniteFunction.lazy(spec.p, spec.N, lambda X: eval_symmetric_many(spec, X),
                               symmetric=True, name=name)
    return lazy.to_dense(cap=space_size(spec.p, spec.N)) if dense else lazy


def _polynomial_function(poly: MultiIndexPolynomial, dense: bool) -> FiniteFunction:
    lazy = FiniteFunction.lazy(poly.p, poly.N, poly.evaluate_many, name="poly")
    return lazy.to_dense(cap=space_size(poly.p, poly.N)) if dense else lazy


def parse_descriptor(spec: str, p: int, N: int) -> Descriptor:
    """`sym:<n>` | `poly:<json path>` | `table:<UFN1 path>`."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise DomainError(f"malformed function descriptor {spec!r}")
    if kind == "sym":
        try:
            return SymmetricSpec(int(arg), p, N)
        except ValueError:
            raise DomainError(f"sym needs an integer degree, got {arg!r}") from None
    if kind == "poly":
        return MultiIndexPolynomial.load(arg)
    if kind == "table":
        return read_table(arg)
    raise DomainError(f"unknown function descriptor kind {kind!r}")


def materialize(
    spec: Descriptor, p: int, N: int, mode: str = "auto", dense_cap: int = DENSE_CAP
) -> FiniteFunction:
    """Build a FiniteFunction: dense iff p^N fits under the cap (mode auto)."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")
    if isinstance(spec, str):
        spec = parse_descriptor(spec, p, N)
    size = space_size(p, N)
    if mode == "dense" and size > dense_cap:
        raise GuardExceeded("dense cap", dense_cap, size)
    dense = mode == "dense" or (mode == "auto" and size <= dense_cap)

    if isinstance(spec, SymmetricSpec):
        if (spec.p, spec.N) != (p, N):
            spec = SymmetricSpec(spec.n, p, N)
        f = _symmetric_function(spec, dense)
    elif isinstance(spec, MultiIndexPolynomial):
        if (spec.p, spec.N) != (p, N):
            raise FormatError(f"polynomial lives in F_{spec.p}^{spec.N}, requested F_{p}^{N}")
        f = _polynomial_function(spec, dense)
    elif isinstance(spec, FiniteFunction):
        if (spec.p, spec.N) != (p, N):
            raise FormatError(f"table lives in F_{spec.p}^{spec.N}, requested F_{p}^{N}")
        f = spec.to_dense(dense_cap) if dense else spec
    else:
        raise DomainError(f"cannot materialize {type(spec).__name__}")
    logger.debug(f"materialized {f}")
    return f
