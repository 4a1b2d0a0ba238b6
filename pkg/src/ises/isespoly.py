"""Invertible simple elliptic polynomials in three variables, plus the bundled catalog.

An *invertible* polynomial has exactly as many monomials as variables; here
always three monomials

    W = X1^{E11} X2^{E12} X3^{E13} + X1^{E21} X2^{E22} X3^{E23} + X1^{E31} X2^{E32} X3^{E33}

whose exponent matrix ``E`` is invertible over the rationals.  The weight
(charge) vector ``q`` solves ``E q = (1,1,1)`` so that every monomial has
weighted degree one.  *Simple elliptic* means ``q1 + q2 + q3 = 1``.

Each such polynomial decomposes into Fermat (``x^a``), chain
(``x1^{a1} x2 + x2^{a2} x3 + ... + xk^{ak}``) and loop
(``x1^{a1} x2 + ... + xk^{ak} x1``) atoms; the Berglund--Huebsch transpose is
obtained by transposing ``E``.

A marginal deformation direction is a degree-one monomial ``X^m``.  Its
combinatorics are captured by the integer relation ``E^T lvec = l * m``:
``X^{m*l} = prod_i M_i^{lvec_i}`` where ``M_i`` are the monomials of ``W``.
The normalising constant ``C = prod_i (-lvec_i/l)^{lvec_i}`` rescales the
natural deformation coordinate to ``x = C sigma^l`` (radius of convergence
one for the associated period series).

:func:`load_catalog` reads a JSON catalog of the thirteen exponent matrices
together with frozen reference data (marginal rows, state-space bookkeeping,
q-expansion coefficients) and revalidates every derivable statement at load
time, raising :class:`SchemaError` on any mismatch.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import lcm
from typing import Any, Iterator, Mapping, Sequence

from .numcore import (
    DomainError,
    MultiPoly,
    Rat,
    UniPoly,
    parse_rat,
    rat,
    solve_linear,
)

__all__ = [
    "NVARS",
    "SchemaError",
    "InvertiblePolynomial",
    "MarginalData",
    "SymmetryGroup",
    "PunctureData",
    "CatalogEntry",
    "charge_vector",
    "mirror_weights",
    "transpose",
    "enumerate_group",
    "load_catalog",
    "get_entry",
]

NVARS = 3

_ONES = (Fraction(1), Fraction(1), Fraction(1))


class SchemaError(ValueError):
    """A catalog file is malformed or internally inconsistent."""


# ---------------------------------------------------------------------------
# small exact linear algebra helpers (3x3 over Fraction)
# ---------------------------------------------------------------------------


def _det3(rows: Sequence[Sequence[Rat]]) -> Rat:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _solve3(rows: Sequence[Sequence[Rat]], rhs: Sequence[Rat]) -> tuple[Rat, Rat, Rat]:
    sol = solve_linear([list(map(Fraction, r)) for r in rows], list(map(Fraction, rhs)), NVARS)
    return (sol[0], sol[1], sol[2])


def _inverse3(rows: Sequence[Sequence[Rat]]) -> tuple[tuple[Rat, ...], ...]:
    cols = []
    for j in range(NVARS):
        rhs = [Fraction(1 if i == j else 0) for i in range(NVARS)]
        cols.append(_solve3(rows, rhs))
    return tuple(tuple(cols[j][i] for j in range(NVARS)) for i in range(NVARS))


def _mat_vec(rows: Sequence[Sequence[Rat]], v: Sequence[Rat]) -> tuple[Rat, ...]:
    return tuple(sum(r[j] * v[j] for j in range(NVARS)) for r in rows)


# ---------------------------------------------------------------------------
# invertible polynomials
# ---------------------------------------------------------------------------


def charge_vector(exponents: Sequence[Sequence[int]]) -> tuple[Rat, Rat, Rat]:
    """Weights ``q`` with ``E q = (1,1,1)``: every monomial has degree one."""
    return _solve3(exponents, _ONES)


def mirror_weights(exponents: Sequence[Sequence[int]]) -> tuple[Rat, Rat, Rat]:
    """Weights of the transposed polynomial: ``E^T qT = (1,1,1)``."""
    transposed = [[exponents[j][i] for j in range(NVARS)] for i in range(NVARS)]
    return _solve3(transposed, _ONES)


class InvertiblePolynomial:
    """A three-variable invertible quasihomogeneous polynomial.

    Stored as the integer exponent matrix ``E`` whose rows are the monomials.
    All coefficients are one; the classification of these singularities lets
    any nonzero coefficients be rescaled away.
    """

    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(e) for e in row) for row in exponents)
        if len(rows) != NVARS or any(len(r) != NVARS for r in rows):
            raise DomainError("exponent matrix must be 3x3")
        if any(e < 0 for r in rows for e in r):
            raise DomainError("exponents must be nonnegative")
        if _det3(rows) == 0:
            raise DomainError("exponent matrix must be invertible")
        self.exponents = rows
        self.atoms()  # validates the Fermat/chain/loop structure

    # -- structure ---------------------------------------------------------

    def atoms(self) -> tuple[tuple[str, tuple[int, ...]], ...]:
        """Decompose into (kind, variable cycle/chain) atoms.

        Row ``i`` must be ``X_i^{a_i}`` (Fermat) or ``X_i^{a_i} X_{s(i)}``
        with unit off-diagonal exponent.  The successor map ``s`` splits the
        variables into Fermat fixed points, chains and loops.
        """
        succ: list[int | None] = []
        for i, row in enumerate(self.exponents):
            if row[i] < 2:
                raise DomainError(f"diagonal exponent of row {i + 1} must be >= 2")
            off = [(j, e) for j, e in enumerate(row) if j != i and e != 0]
            if not off:
                succ.append(None)
            elif len(off) == 1 and off[0][1] == 1:
                succ.append(off[0][0])
            else:
                raise DomainError(f"row {i + 1} is not of Fermat/chain/loop shape")
        preds = {i: [j for j in range(NVARS) if succ[j] == i] for i in range(NVARS)}
        if any(len(p) > 1 for p in preds.values()):
            raise DomainError("a variable is fed by more than one chain link")
        atoms: list[tuple[str, tuple[int, ...]]] = []
        seen: set[int] = set()
        # loops: follow the successor map until it revisits the path
        for start in range(NVARS):
            if start in seen:
                continue
            path = [start]
            node = succ[start]
            while node is not None and node not in path:
                path.append(node)
                node = succ[node]
            if node is not None:
                cycle = path[path.index(node):]
                if start in cycle:
                    atoms.append(("loop", tuple(cycle)))
                    seen.update(cycle)
        # chains and Fermat atoms start at variables nothing feeds into
        for start in range(NVARS):
            if start in seen or preds[start]:
                continue
            path = [start]
            node = succ[start]
            while node is not None:
                if node in seen or node in path:
                    raise DomainError("a chain link feeds a loop variable")
                path.append(node)
                node = succ[node]
            atoms.append(("fermat" if len(path) == 1 else "chain", tuple(path)))
            seen.update(path)
        if seen != set(range(NVARS)):
            raise DomainError("unrecognised chain/loop structure")
        return tuple(sorted(atoms, key=lambda a: a[1]))

    # -- basic invariants ----------------------------------------------------

    @property
    def determinant(self) -> int:
        return int(_det3(self.exponents))

    @property
    def charges(self) -> tuple[Rat, Rat, Rat]:
        return charge_vector(self.exponents)

    @property
    def mirror_charges(self) -> tuple[Rat, Rat, Rat]:
        return mirror_weights(self.exponents)

    @property
    def is_simple_elliptic(self) -> bool:
        return sum(self.charges) == 1

    @property
    def milnor_number(self) -> int:
        mu = Fraction(1)
        for q in self.charges:
            mu *= (1 - q) / q
        if mu.denominator != 1:
            raise DomainError("weights do not give an integral Milnor number")
        return int(mu)

    def transpose(self) -> "InvertiblePolynomial":
        return InvertiblePolynomial(
            [[self.exponents[j][i] for j in range(NVARS)] for i in range(NVARS)]
        )

    # -- polynomial views ----------------------------------------------------

    def polynomial(self) -> MultiPoly:
        p = MultiPoly.const(0)
        for row in self.exponents:
            p = p + MultiPoly.monomial(row, 1)
        return p

    def weighted_degree(self, exps: Sequence[int]) -> Rat:
        q = self.charges
        return sum(Fraction(e) * q[i] for i, e in enumerate(exps))

    def degree_one_monomials(self) -> tuple[tuple[int, int, int], ...]:
        """All monomial exponent triples of weighted degree one."""
        q = self.charges
        out = []
        b0 = int(1 / q[0]) + 1
        b1 = int(1 / q[1]) + 1
        b2 = int(1 / q[2]) + 1
        for a in range(b0):
            for b in range(b1):
                for c in range(b2):
                    if a * q[0] + b * q[1] + c * q[2] == 1:
                        out.append((a, b, c))
        return tuple(out)

    # -- symmetry group ------------------------------------------------------

    def group(self) -> "SymmetryGroup":
        return SymmetryGroup(enumerate_group(self.exponents))

    # -- dunders -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InvertiblePolynomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __repr__(self) -> str:
        return f"InvertiblePolynomial({list(map(list, self.exponents))})"

    def to_text(self) -> str:
        return self.polynomial().to_text()


def transpose(exponents: Sequence[Sequence[int]] | InvertiblePolynomial) -> InvertiblePolynomial:
    """Berglund--Huebsch transpose: transpose the exponent matrix."""
    if isinstance(exponents, InvertiblePolynomial):
        return exponents.transpose()
    return InvertiblePolynomial(exponents).transpose()


def enumerate_group(exponents: Sequence[Sequence[int]]) -> tuple[tuple[Rat, ...], ...]:
    """All diagonal symmetries of ``W`` as phase vectors in ``[0,1)^3``.

    ``theta`` is a symmetry iff ``E theta`` is integral; there are exactly
    ``|det E|`` of them.  Returned lexicographically sorted.
    """
    poly = exponents if isinstance(exponents, InvertiblePolynomial) else InvertiblePolynomial(exponents)
    inv = _inverse3(poly.exponents)
    order = abs(poly.determinant)
    generators = [tuple(inv[i][j] % 1 for i in range(NVARS)) for j in range(NVARS)]
    seen: set[tuple[Rat, ...]] = {(Fraction(0), Fraction(0), Fraction(0))}
    frontier = list(seen)
    while frontier:
        theta = frontier.pop()
        for gen in generators:
            new = tuple((a + b) % 1 for a, b in zip(theta, gen))
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    if len(seen) != order:
        raise DomainError("group enumeration does not match |det E|")
    return tuple(sorted(seen))


@dataclass(frozen=True)
class SymmetryGroup:
    """The group of diagonal symmetries, as sorted phase vectors."""

    elements: tuple[tuple[Rat, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, theta: Sequence[Rat]) -> bool:
        return tuple(Fraction(t) % 1 for t in theta) in set(self.elements)

    def __iter__(self) -> Iterator[tuple[Rat, ...]]:
        return iter(self.elements)


# ---------------------------------------------------------------------------
# marginal deformation rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarginalData:
    """A degree-one deformation direction ``sigma * X^m`` of ``W``.

    ``l_vector`` is the integer relation ``E^T l_vector = l * m`` (so
    ``X^{l m} = prod M_i^{l_i}``), ``l`` its positive denominator-clearing
    index, and ``C = prod (-l_i/l)^{l_i}`` the coordinate normalisation
    giving ``x = C sigma^l`` unit radius of convergence.  ``weights`` are the
    hypergeometric parameters ``(alpha, beta, gamma)`` of the reduced
    second-order Picard--Fuchs operator for the primitive period, when frozen
    in the catalog.
    """

    m: tuple[int, int, int]
    l_vector: tuple[int, int, int]
    l: int
    C: Rat
    weights: tuple[Rat, Rat, Rat] | None = None

    @staticmethod
    def derive(
        poly: InvertiblePolynomial,
        m: Sequence[int],
        weights: tuple[Rat, Rat, Rat] | None = None,
    ) -> "MarginalData":
        m = tuple(int(e) for e in m)
        if poly.weighted_degree(m) != 1:
            raise DomainError(f"monomial {m} is not of weighted degree one")
        inv_t = _inverse3([[poly.exponents[j][i] for j in range(NVARS)] for i in range(NVARS)])
        w = _mat_vec(inv_t, [Fraction(e) for e in m])
        ell = lcm(*(f.denominator for f in w))
        lvec = tuple(int(f * ell) for f in w)
        c = Fraction(1)
        for li in lvec:
            if li:
                c *= Fraction(-li, ell) ** li
        return MarginalData(m, lvec, ell, c, weights)

    @property
    def x_of_sigma_index(self) -> int:
        return self.l

    def x_of_sigma(self, sigma: Rat) -> Rat:
        """The normalised coordinate ``x = C sigma^l``."""
        return self.C * Fraction(sigma) ** self.l


# ---------------------------------------------------------------------------
# catalog entries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PunctureData:
    """Interior special points ``sigma = p_k`` with ``p_k^index = radicand``.

    The ``count`` values of ``p_k`` differ by ``index``-th roots of unity;
    ``radicand = 1/C`` so that ``x(p_k) = 1``.
    """

    radicand: Rat
    index: int
    count: int


@dataclass(frozen=True)
class CatalogEntry:
    """One singularity of the catalog, with its frozen reference data."""

    name: str
    family: str
    polynomial: InvertiblePolynomial
    milnor: int
    L: int
    j_zero: Rat
    marginals: tuple[MarginalData, ...]
    twisted: tuple[tuple[tuple[int, int, int], tuple[Rat, Rat, Rat]], ...]
    basis: tuple[tuple[int, int, int], ...] | None
    top_monomial: tuple[int, int, int] | None
    K: Rat | None
    N: int | None
    j_numerator: UniPoly | None
    j_denominator: UniPoly | None
    P: UniPoly | None
    P_at_puncture: Rat | None
    punctures: PunctureData | None
    fjrw: Mapping[str, Any] | None
    gepner: Mapping[str, Any] | None
    qexp: Mapping[str, Any] | None
    infinity_fjrw: Mapping[str, Any] | None
    notes: tuple[str, ...]

    @property
    def charges(self) -> tuple[Rat, Rat, Rat]:
        return self.polynomial.charges

    @property
    def mirror_charges(self) -> tuple[Rat, Rat, Rat]:
        return self.polynomial.mirror_charges

    @property
    def has_modular_data(self) -> bool:
        return self.P is not None

    def marginal(self, m: Sequence[int]) -> MarginalData:
        key = tuple(int(e) for e in m)
        for row in self.marginals:
            if row.m == key:
                return row
        raise KeyError(f"{self.name} has no catalogued marginal {key}")


# ---------------------------------------------------------------------------
# JSON parsing helpers
# ---------------------------------------------------------------------------


def _ctx(where: str, msg: str) -> SchemaError:
    return SchemaError(f"{where}: {msg}")


def _need(d: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in d:
        raise _ctx(where, f"missing key {key!r}")
    return d[key]


def _parse_rat_field(v: Any, where: str) -> Rat:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise _ctx(where, f"expected rational string, got {v!r}")
    try:
        return parse_rat(str(v))
    except Exception as exc:  # noqa: BLE001 - rewrap for uniform error type
        raise _ctx(where, f"bad rational {v!r}: {exc}") from exc


def _parse_int_triple(v: Any, where: str) -> tuple[int, int, int]:
    if not isinstance(v, list) or len(v) != NVARS or not all(isinstance(e, int) for e in v):
        raise _ctx(where, f"expected a list of three integers, got {v!r}")
    return (v[0], v[1], v[2])


def _parse_unipoly(v: Any, where: str) -> UniPoly:
    if not isinstance(v, list):
        raise _ctx(where, "expected a coefficient list")
    return UniPoly([_parse_rat_field(c, where) for c in v])


def _parse_weights(v: Any, where: str) -> tuple[Rat, Rat, Rat]:
    if not isinstance(v, list) or len(v) != 3:
        raise _ctx(where, f"expected three hypergeometric weights, got {v!r}")
    a, b, g = (_parse_rat_field(x, where) for x in v)
    return (a, b, g)


# ---------------------------------------------------------------------------
# entry validation
# ---------------------------------------------------------------------------


def _validate_modular_block(name: str, entry_dict: Mapping[str, Any], entry: CatalogEntry) -> None:
    """Check the frozen modular data against what is derivable."""
    where = f"entry {name}"
    if entry.P is None:
        for key in ("N", "jNumerator", "jDenominator", "PAtPuncture", "punctures"):
            if entry_dict.get(key) is not None:
                raise _ctx(where, f"{key} requires P")
        return
    if entry.N is None or entry.j_numerator is None or entry.j_denominator is None:
        raise _ctx(where, "modular block needs N, jNumerator, jDenominator")
    if entry.punctures is None or entry.P_at_puncture is None:
        raise _ctx(where, "modular block needs punctures and PAtPuncture")
    fam = entry.marginals[0]
    # j = jNumerator/jDenominator must equal P / (1 - C sigma^l)^N.
    one_minus = UniPoly([Fraction(1)] + [Fraction(0)] * (fam.l - 1) + [-fam.C])
    lhs = entry.j_numerator * one_minus ** entry.N
    rhs = entry.P * entry.j_denominator
    if lhs != rhs:
        raise _ctx(where, "jNumerator/jDenominator does not match P/(1 - C sigma^l)^N")
    if entry.j_denominator.eval(Fraction(0)) == 0:
        raise _ctx(where, "j has a pole at sigma = 0")
    j0 = entry.j_numerator.eval(Fraction(0)) / entry.j_denominator.eval(Fraction(0))
    if j0 != entry.j_zero:
        raise _ctx(where, f"j(0) = {j0} disagrees with jZero {entry.j_zero}")
    pun = entry.punctures
    if pun.index != fam.l:
        raise _ctx(where, "puncture index must equal the marginal index l")
    if pun.radicand != 1 / fam.C:
        raise _ctx(where, "puncture radicand must equal 1/C")
    # P must be a polynomial in sigma^l; evaluate it at sigma^l = radicand.
    val = Fraction(0)
    for k, c in enumerate(entry.P.coeffs):
        if c == 0:
            continue
        if k % fam.l:
            raise _ctx(where, "P is not a polynomial in sigma^l")
        val += c * pun.radicand ** (k // fam.l)
    if val != entry.P_at_puncture:
        raise _ctx(where, f"P at the puncture is {val}, not {entry.P_at_puncture}")


def _validate_fjrw_block(name: str, entry: CatalogEntry) -> None:
    """Light structural checks; the state-space module revalidates in depth."""
    where = f"entry {name} fjrw"
    block = entry.fjrw
    if block is None:
        return
    if block.get("excluded"):
        return
    scheme = _need(block, "scheme", where)
    offset = [_parse_rat_field(v, where) for v in _need(scheme, "offset", where)]
    steps = [[_parse_rat_field(v, where) for v in s] for s in _need(scheme, "steps", where)]
    orders = _need(scheme, "orders", where)
    if len(steps) != len(orders):
        raise _ctx(where, "steps and orders must align")
    mirror_poly = entry.polynomial.transpose()
    group = set(enumerate_group(mirror_poly.exponents))

    def resolve(index: Sequence[int]) -> tuple[Rat, ...]:
        if len(index) != len(steps):
            raise _ctx(where, f"sector index {index} has wrong arity")
        phases = list(offset)
        for i, s in zip(index, steps):
            for k in range(NVARS):
                phases[k] += i * s[k]
        phases = tuple(p % 1 for p in phases)
        if phases not in group:
            raise _ctx(where, f"sector {tuple(index)} -> {phases} is not a symmetry")
        return phases

    if tuple(Fraction(v) % 1 for v in offset) not in group:
        raise _ctx(where, "scheme offset is not a symmetry of the transpose")
    for s in steps:
        if tuple(Fraction(v) % 1 for v in s) not in group:
            raise _ctx(where, f"step {s} is not a symmetry of the transpose")
    qt = entry.mirror_charges
    j_phase = resolve(_need(block, "J", where))
    if j_phase != tuple(q % 1 for q in qt):
        raise _ctx(where, f"J sector {j_phase} must carry the transpose weights")
    rho = _need(block, "rho", where)
    top_phase = resolve(_need(rho, "top", where))
    if top_phase != tuple((1 - q) % 1 for q in qt):
        raise _ctx(where, "top sector must carry phases 1 - qT")
    for key, idx in rho.items():
        if key != "top":
            resolve(idx)
    for fixture in block.get("broad", []):
        resolve(_need(fixture, "index", where))
    narrow = _need(block, "narrow", where)
    actual = sum(1 for g in group if all(p != 0 for p in g))
    if actual != narrow:
        raise _ctx(where, f"narrow sector count is {actual}, not {narrow}")
    broad = block.get("broad", [])
    total = narrow + sum(int(b["dim"]) for b in broad)
    if total != entry.milnor:
        raise _ctx(where, f"state space dimension {total} != Milnor number {entry.milnor}")


def _validate_gepner_block(name: str, entries: Mapping[str, CatalogEntry]) -> None:
    entry = entries[name]
    block = entry.gepner
    if block is None:
        return
    where = f"entry {name} gepner"
    ref_name = block.get("reference")
    if ref_name is None:
        return
    if ref_name not in entries:
        raise _ctx(where, f"unknown reference {ref_name!r}")
    ref = entries[ref_name]
    if (ref.milnor, ref.j_zero) != (entry.milnor, entry.j_zero):
        raise _ctx(where, "reference lies in a different (milnor, j(0)) class")
    phi = _parse_int_triple(_need(block, "phi", where), where)
    entry.marginal(phi)  # must be a catalogued marginal of the member
    ref_phi = _parse_int_triple(_need(block, "referencePhi", where), where)
    ref.marginal(ref_phi)


def _parse_entry(d: Mapping[str, Any]) -> CatalogEntry:
    if not isinstance(d, Mapping):
        raise SchemaError(f"entry must be an object, got {type(d).__name__}")
    name = _need(d, "name", "entry")
    where = f"entry {name}"
    family = _need(d, "family", where)
    if family not in ("e6", "e7", "e8"):
        raise _ctx(where, f"unknown family {family!r}")
    try:
        poly = InvertiblePolynomial(_need(d, "E", where))
    except DomainError as exc:
        raise _ctx(where, f"bad exponent matrix: {exc}") from exc
    if not poly.is_simple_elliptic:
        raise _ctx(where, "weights do not sum to one")
    if sum(poly.mirror_charges) != 1:
        raise _ctx(where, "transpose weights do not sum to one")

    milnor = _need(d, "milnor", where)
    if poly.milnor_number != milnor:
        raise _ctx(where, f"Milnor number is {poly.milnor_number}, not {milnor}")
    L = _need(d, "L", where)
    if lcm(*(q.denominator for q in poly.charges)) != L:
        raise _ctx(where, "L must be the lcm of the weight denominators")
    j_zero = _parse_rat_field(_need(d, "jZero", where), where)

    marginals = []
    for row in _need(d, "marginals", where):
        mwhere = f"{where} marginal {row.get('m')}"
        m = _parse_int_triple(_need(row, "m", mwhere), mwhere)
        weights = _parse_weights(_need(row, "weights", mwhere), mwhere)
        if weights[0] + weights[1] != weights[2]:
            raise _ctx(mwhere, "expected gamma = alpha + beta for a degree-one direction")
        derived = MarginalData.derive(poly, m, weights)
        if list(derived.l_vector) != list(_need(row, "l", mwhere)):
            raise _ctx(mwhere, f"l vector should be {derived.l_vector}")
        if derived.l != _need(row, "lcm", mwhere):
            raise _ctx(mwhere, f"index l should be {derived.l}")
        if derived.C != _parse_rat_field(_need(row, "C", mwhere), mwhere):
            raise _ctx(mwhere, f"C should be {derived.C}")
        marginals.append(derived)
    if not marginals:
        raise _ctx(where, "at least one marginal row is required")

    twisted = []
    for row in d.get("twisted", []):
        twhere = f"{where} twisted {row.get('r')}"
        r = _parse_int_triple(_need(row, "r", twhere), twhere)
        tw = _parse_weights(_need(row, "weights", twhere), twhere)
        deg = sum(Fraction(e) * q for e, q in zip(r, poly.charges))
        if tw[0] + tw[1] - tw[2] != deg:
            raise _ctx(twhere, f"expected alpha + beta - gamma = {deg}")
        twisted.append((r, tw))

    basis = d.get("basis")
    if basis is not None:
        basis = tuple(_parse_int_triple(b, f"{where} basis") for b in basis)
        if len(basis) != milnor:
            raise _ctx(where, "basis length must equal the Milnor number")
        if len(set(basis)) != milnor:
            raise _ctx(where, "basis monomials must be distinct")
    top = d.get("topMonomial")
    if top is not None:
        top = _parse_int_triple(top, f"{where} topMonomial")
        if poly.weighted_degree(top) != 1:
            raise _ctx(where, "topMonomial must have weighted degree one")
        if basis is not None and top not in basis:
            raise _ctx(where, "topMonomial must lie in the basis")

    K = d.get("K")
    K = None if K is None else _parse_rat_field(K, where)
    N = d.get("N")
    jnum = d.get("jNumerator")
    jnum = None if jnum is None else _parse_unipoly(jnum, f"{where} jNumerator")
    jden = d.get("jDenominator")
    jden = None if jden is None else _parse_unipoly(jden, f"{where} jDenominator")
    P = d.get("P")
    P = None if P is None else _parse_unipoly(P, f"{where} P")
    pap = d.get("PAtPuncture")
    pap = None if pap is None else _parse_rat_field(pap, where)
    pun = d.get("punctures")
    if pun is not None:
        pun = PunctureData(
            radicand=_parse_rat_field(_need(pun, "radicand", where), where),
            index=int(_need(pun, "index", where)),
            count=int(_need(pun, "count", where)),
        )

    notes = tuple(str(s) for s in d.get("notes", []))

    entry = CatalogEntry(
        name=name,
        family=family,
        polynomial=poly,
        milnor=milnor,
        L=L,
        j_zero=j_zero,
        marginals=tuple(marginals),
        twisted=tuple(twisted),
        basis=basis,
        top_monomial=top,
        K=K,
        N=N,
        j_numerator=jnum,
        j_denominator=jden,
        P=P,
        P_at_puncture=pap,
        punctures=pun,
        fjrw=d.get("fjrw"),
        gepner=d.get("gepner"),
        qexp=d.get("qexp"),
        infinity_fjrw=d.get("infinityFjrw"),
        notes=notes,
    )
    _validate_modular_block(name, d, entry)
    _validate_fjrw_block(name, entry)
    return entry


# ---------------------------------------------------------------------------
# catalog loading
# ---------------------------------------------------------------------------


def _default_catalog_text() -> str:
    return resources.files("ises.data").joinpath("catalog.json").read_text("utf-8")


def load_catalog(path: str | None = None) -> tuple[CatalogEntry, ...]:
    """Load and validate a catalog.

    Resolution order: explicit ``path`` argument, then the ``ISES_CATALOG``
    environment variable, then the bundled data file.
    """
    if path is None:
        path = os.environ.get("ISES_CATALOG") or None
    try:
        if path is None:
            text = _default_catalog_text()
            source = "<bundled>"
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
            source = path
    except OSError as exc:
        raise SchemaError(f"cannot read catalog: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping) or "entries" not in doc:
        raise SchemaError(f"{source}: expected an object with an 'entries' list")
    raw_entries = doc["entries"]
    if not isinstance(raw_entries, list) or not raw_entries:
        raise SchemaError(f"{source}: 'entries' must be a nonempty list")
    entries = []
    seen_names: set[str] = set()
    for raw in raw_entries:
        entry = _parse_entry(raw)
        if entry.name in seen_names:
            raise SchemaError(f"{source}: duplicate entry name {entry.name!r}")
        seen_names.add(entry.name)
        entries.append(entry)
    by_name = {e.name: e for e in entries}
    for e in entries:
        _validate_gepner_block(e.name, by_name)
    return tuple(entries)


def get_entry(catalog: Sequence[CatalogEntry], name: str) -> CatalogEntry:
    for entry in catalog:
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")
