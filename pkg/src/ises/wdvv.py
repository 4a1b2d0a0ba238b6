"""Genus-zero correlator tables and WDVV-based reconstruction.

A :class:`CorrelatorTable` stores genus-zero correlators of a Frobenius
algebra (pairing + graded basis) keyed by insertion multisets, optionally
graded by an integer curve degree.  Values may be known rationals or
declared unknowns.  The table is closed-world: a key that was never set
and never declared unknown reads as zero, so builders must declare every
key that can be nonzero.

:func:`wdvv_residual` evaluates the associativity constraint

    sum_k <a, b, e_k> eta^{kl} <e_l, c, d>  -  (b <-> c)

together with its derivative extensions: each extra insertion x is
distributed over the two factors by the Leibniz rule, which mixes n-point
correlators with (n+1)-point ones.  With one extra slot this is the
standard identity relating four-point and three-point functions; the
result is a :class:`LinearForm` in the unknown keys.

:func:`propagate` repeatedly scans residual instances that are linear in
exactly one unknown, solves them, and enforces consistency of the fully
known instances, raising :class:`InconsistentSystem` on any conflict.
Solved values are unique when the system is consistent, so the outcome is
independent of the instance-selection order.

The module also ships the small Gromov-Witten seed data for the elliptic
orbifold projective lines P^1_{a,b,c}: Chen-Ruan pairing, the degree-zero
three-point products, the normalized degree-one three-point correlator,
and the divisor rule that converts known three-point values into
four-point values with a divisor insertion.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .numcore import DomainError, NoSolution, Rat, rat, solve_linear

__all__ = [
    "CorrelatorTable",
    "InconsistentSystem",
    "LinearForm",
    "MissingPairing",
    "apply_divisor_rule",
    "check_residuals",
    "elliptic_orbifold_basis",
    "gw_seed_table",
    "propagate",
    "wdvv_residual",
]


class InconsistentSystem(DomainError):
    """Two WDVV instances (or two assignments) force different values."""


class MissingPairing(DomainError):
    """The supplied pairing matrix is singular or incomplete."""


class LinearForm:
    """An affine-linear combination  constant + sum coeff * unknown_key."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0, terms: Mapping | None = None):
        self.constant = rat(constant)
        self.terms: dict = {}
        if terms:
            for key, coeff in terms.items():
                c = rat(coeff)
                if c:
                    self.terms[key] = c

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def scaled(self, factor) -> "LinearForm":
        f = rat(factor)
        if not f:
            return LinearForm(0)
        return LinearForm(
            self.constant * f, {k: c * f for k, c in self.terms.items()}
        )

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = LinearForm(self.constant + other.constant, self.terms)
        for key, coeff in other.terms.items():
            c = out.terms.get(key, Fraction(0)) + coeff
            if c:
                out.terms[key] = c
            else:
                out.terms.pop(key, None)
        return out

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + other.scaled(-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinearForm):
            return self.constant == other.constant and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant == other
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms) or bool(self.constant)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        parts = [str(self.constant)] if self.constant or not self.terms else []
        parts += [f"{c}*<{', '.join(map(str, k))}>" for k, c in self.terms.items()]
        return " + ".join(parts) if parts else "0"


def _multiplicity_product(left: LinearForm, right: LinearForm):
    """Product of two forms; None when it would be quadratic in unknowns."""
    if left.terms and right.terms:
        return None
    if right.terms:
        left, right = right, left
    return left.scaled(right.constant)


class CorrelatorTable:
    """Keyed store of genus-zero correlator values with an unknown-set.

    Keys are multisets of basis labels (n >= 3 insertions), canonicalized
    by sorting in basis order; graded tables additionally key by an
    integer degree.  When every label carries a rational grading, setting
    a nonzero value on a key violating the genus-zero degree budget
    (sum of degrees = n - 2) is rejected, and such keys read as zero.
    """

    def __init__(
        self,
        labels: Sequence,
        pairing: Mapping,
        degrees: Mapping | None = None,
        graded: bool = False,
    ):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.graded = bool(graded)
        self._rank = {label: i for i, label in enumerate(self.labels)}
        self.degrees = None
        if degrees is not None:
            self.degrees = {label: rat(degrees[label]) for label in self.labels}
        self._pairing = self._symmetrized(pairing)
        self._eta = self._invert_pairing()
        self._values: dict = {}
        self._unknown: set = set()
        self._frozen = False

    # -- construction ------------------------------------------------

    def _symmetrized(self, pairing: Mapping) -> dict:
        out = {}
        for (a, b), value in pairing.items():
            if a not in self._rank or b not in self._rank:
                raise MissingPairing(f"pairing on unknown label {(a, b)!r}")
            v = rat(value)
            for key in ((a, b), (b, a)):
                if out.setdefault(key, v) != v:
                    raise MissingPairing(f"pairing not symmetric at {key!r}")
        return out

    def _invert_pairing(self) -> dict:
        n = len(self.labels)
        matrix = [
            [self._pairing.get((a, b), Fraction(0)) for b in self.labels]
            for a in self.labels
        ]
        inverse_cols = []
        for j in range(n):
            rhs = [Fraction(int(i == j)) for i in range(n)]
            try:
                inverse_cols.append(solve_linear(matrix, rhs, n))
            except NoSolution as exc:
                raise MissingPairing("pairing matrix is singular") from exc
        eta = {}
        for i, a in enumerate(self.labels):
            row = []
            for j, b in enumerate(self.labels):
                coeff = inverse_cols[j][i]
                if coeff:
                    row.append((b, coeff))
            eta[a] = tuple(row)
        return eta

    # -- keys ----------------------------------------------------------

    def key(self, insertions: Iterable, degree: int = 0):
        ins = tuple(sorted(insertions, key=self._rank.__getitem__))
        if len(ins) < 3:
            raise ValueError("correlator keys need at least 3 insertions")
        if self.graded:
            return (ins, int(degree))
        if degree:
            raise ValueError("degree grading not enabled for this table")
        return ins

    def _insertions(self, key):
        return key[0] if self.graded else key

    def pairing(self, a, b) -> Rat:
        return self._pairing.get((a, b), Fraction(0))

    def eta_dual(self, label):
        """Nonzero entries (m, eta^{label,m}) of the inverse pairing row."""
        return self._eta[label]

    def budget_ok(self, insertions) -> bool:
        """Genus-zero degree budget: sum of gradings equals n - 2."""
        if self.degrees is None:
            return True
        total = sum(self.degrees[label] for label in insertions)
        return total == len(insertions) - 2

    # -- values ----------------------------------------------------------

    def set(self, insertions, value, degree: int = 0) -> None:
        self.set_key(self.key(insertions, degree), value)

    def set_key(self, key, value) -> None:
        if self._frozen:
            raise ValueError("table is frozen")
        v = rat(value)
        if not self.budget_ok(self._insertions(key)):
            if v:
                raise DomainError(
                    f"nonzero value on degree-budget-violating key {key!r}"
                )
            return
        old = self._values.get(key)
        if old is not None and old != v:
            raise InconsistentSystem(f"{key!r}: {old} versus {v}")
        self._values[key] = v
        self._unknown.discard(key)

    def declare_unknown(self, insertions, degree: int = 0) -> None:
        if self._frozen:
            raise ValueError("table is frozen")
        key = self.key(insertions, degree)
        if not self.budget_ok(self._insertions(key)):
            return
        if key not in self._values:
            self._unknown.add(key)

    def value(self, insertions, degree: int = 0):
        """Known value, or None when the key is a declared unknown."""
        key = self.key(insertions, degree)
        if key in self._unknown:
            return None
        return self._values.get(key, Fraction(0))

    def lookup(self, insertions, degree: int = 0) -> LinearForm:
        key = self.key(insertions, degree)
        if key in self._unknown:
            return LinearForm(0, {key: 1})
        return LinearForm(self._values.get(key, Fraction(0)))

    def lookup_key(self, key) -> LinearForm:
        if key in self._unknown:
            return LinearForm(0, {key: 1})
        return LinearForm(self._values.get(key, Fraction(0)))

    @property
    def unknown_keys(self) -> tuple:
        return tuple(sorted(self._unknown, key=repr))

    def known_items(self):
        return tuple(sorted(self._values.items(), key=repr))

    def freeze(self) -> "CorrelatorTable":
        self._frozen = True
        return self

    def copy(self) -> "CorrelatorTable":
        dup = CorrelatorTable.__new__(CorrelatorTable)
        dup.labels = self.labels
        dup.graded = self.graded
        dup._rank = self._rank
        dup.degrees = self.degrees
        dup._pairing = self._pairing
        dup._eta = self._eta
        dup._values = dict(self._values)
        dup._unknown = set(self._unknown)
        dup._frozen = False
        return dup


def _pair_sum(table: CorrelatorTable, left_pair, right_pair, extra, degree):
    """sum_{k,l} <left, k (+E)> eta^{kl} <l, right (+extra-E)>  as a form.

    Extra insertions are distributed over the two factors by the Leibniz
    rule (per slot, so repeated labels acquire the right multiplicities).
    Degree splits d1 + d2 = degree are summed for graded tables.
    Returns None when some contribution is quadratic in the unknowns.
    """
    splits = [(None, None)]
    if table.graded:
        splits = [(d1, degree - d1) for d1 in range(degree + 1)]
    total = LinearForm(0)
    masks = range(1 << len(extra))
    for k in table.labels:
        duals = table.eta_dual(k)
        if not duals:
            continue
        for mask in masks:
            left_extra = tuple(x for i, x in enumerate(extra) if mask >> i & 1)
            right_extra = tuple(
                x for i, x in enumerate(extra) if not mask >> i & 1
            )
            for d1, d2 in splits:
                left = table.lookup(
                    left_pair + (k,) + left_extra, d1 if table.graded else 0
                )
                if not left:
                    continue
                acc = LinearForm(0)
                for l, eta in duals:
                    right = table.lookup(
                        (l,) + right_pair + right_extra, d2 if table.graded else 0
                    )
                    if not right:
                        continue
                    acc = acc + right.scaled(eta)
                term = _multiplicity_product(left, acc)
                if term is None:
                    return None
                total = total + term
    return total


def wdvv_residual(
    table: CorrelatorTable, a, b, c, d, extra: Sequence = (), degree: int | None = None
) -> LinearForm:
    """Associativity residual for insertions (a, b | c, d) with extras.

    Computes  sum <a,b,k,(E)> eta^{kl} <l,c,d,(extra-E)>  minus the same
    expression with b and c exchanged.  Zero on every consistent table;
    a nonzero constant flags a contradiction, a nonconstant form is a
    linear relation among the declared unknowns.
    """
    if table.graded and degree is None:
        raise ValueError("graded tables require a total degree")
    deg = 0 if degree is None else int(degree)
    first = _pair_sum(table, (a, b), (c, d), tuple(extra), deg)
    second = _pair_sum(table, (a, c), (b, d), tuple(extra), deg)
    if first is None or second is None:
        raise DomainError("residual is quadratic in the unknowns")
    return first - second


def _budget_filter(table: CorrelatorTable):
    """Predicate selecting instances whose terms can pass the degree budget.

    In every product <L> eta^{kl} <R> the dual insertions contribute
    deg k + deg l = chat (the common degree of pairing-dual label pairs),
    so both factors satisfy their budgets only when the quad and extras
    sum to (2 + n_extra) + 2 - 4 - chat + n_extra * 0 ... concretely:
    sum(quad) + sum(extra) == 2 + n_extra - chat.  Disabled when gradings
    are absent or the pairing is not degree-homogeneous.
    """
    if table.degrees is None:
        return None
    sums = {
        table.degrees[a] + table.degrees[b]
        for (a, b), v in table._pairing.items()
        if v
    }
    if len(sums) != 1:
        return None
    chat = sums.pop()

    def ok(quad, extra) -> bool:
        total = sum(table.degrees[x] for x in quad)
        total += sum(table.degrees[x] for x in extra)
        return total == 2 + len(extra) - chat

    return ok


def _instances(table: CorrelatorTable, extra_slots: int, degrees: Sequence[int]):
    degree_list = list(degrees) if table.graded else [None]
    admissible = _budget_filter(table)
    for quad in combinations_with_replacement(table.labels, 4):
        a, b, c, d = quad
        for n_extra in range(extra_slots + 1):
            for extra in combinations_with_replacement(table.labels, n_extra):
                if admissible is not None and not admissible(quad, extra):
                    continue
                for degree in degree_list:
                    yield quad, ((a, b), (c, d)), ((a, c), (b, d)), extra, degree
                    yield quad, ((a, b), (c, d)), ((a, d), (b, c)), extra, degree


def propagate(
    table: CorrelatorTable,
    targets: Sequence | None = None,
    *,
    extra_slots: int = 1,
    degrees: Sequence[int] = (0,),
    shuffle_seed: int | None = None,
    admissible=None,
) -> CorrelatorTable:
    """Close a table under WDVV: solve instances linear in one unknown.

    Scans all residual instances built from the basis labels with up to
    ``extra_slots`` extra insertions, solves every instance that is linear
    in exactly one unknown, and repeats to a fixed point.  Fully known
    instances must vanish (InconsistentSystem otherwise).  ``targets``,
    when given, lists keys that must end up resolved; unresolved targets
    raise NoSolution.  ``shuffle_seed`` randomizes the scan order, which
    must not change the outcome.

    ``admissible(pair, extra)`` filters instances: when the table's labels
    span only part of a larger state space, only pairings whose forced
    intermediate states stay inside the label set yield complete residuals,
    and the caller must reject the rest.
    """
    work = table.copy()
    progress = True
    while progress and work._unknown:
        progress = False
        instance_list = list(_instances(work, extra_slots, degrees))
        if shuffle_seed is not None:
            random.Random(shuffle_seed).shuffle(instance_list)
        for _, pair1, pair2, extra, degree in instance_list:
            if admissible is not None and not (
                admissible(pair1, extra) and admissible(pair2, extra)
            ):
                continue
            deg = 0 if degree is None else degree
            first = _pair_sum(work, pair1[0], pair1[1], extra, deg)
            second = _pair_sum(work, pair2[0], pair2[1], extra, deg)
            if first is None or second is None:
                continue
            form = first - second
            if not form.terms:
                if form.constant:
                    raise InconsistentSystem(
                        f"known instance {pair1}/{pair2} extra={extra} "
                        f"degree={degree} has residual {form.constant}"
                    )
                continue
            if len(form.terms) != 1:
                continue
            (key, coeff), = form.terms.items()
            work.set_key(key, -form.constant / coeff)
            progress = True
    if targets is not None:
        missing = [k for k in targets if k in work._unknown]
        if missing:
            raise NoSolution(f"unresolved correlators: {missing!r}")
    return work


def check_residuals(
    table: CorrelatorTable,
    *,
    extra_slots: int = 1,
    degrees: Sequence[int] = (0,),
    admissible=None,
) -> int:
    """Evaluate every fully known residual instance; return the count.

    Raises InconsistentSystem on the first nonzero residual.  Instances
    involving unknowns are skipped.  ``admissible`` filters pairings as in
    :func:`propagate`.
    """
    checked = 0
    for _, pair1, pair2, extra, degree in _instances(table, extra_slots, degrees):
        if admissible is not None and not (
            admissible(pair1, extra) and admissible(pair2, extra)
        ):
            continue
        deg = 0 if degree is None else degree
        first = _pair_sum(table, pair1[0], pair1[1], extra, deg)
        second = _pair_sum(table, pair2[0], pair2[1], extra, deg)
        if first is None or second is None:
            continue
        form = first - second
        if form.terms:
            continue
        if form.constant:
            raise InconsistentSystem(
                f"instance {pair1}/{pair2} extra={extra} degree={degree} "
                f"has residual {form.constant}"
            )
        checked += 1
    return checked


# ---------------------------------------------------------------------------
# Elliptic orbifold projective lines P^1_{a1,a2,a3}


def elliptic_orbifold_basis(orders: Sequence[int]):
    """Cohomology labels and gradings of P^1_{a1,a2,a3}.

    Labels: (0,1) the unit, (0,2) the point class (grading 1), and (i,j)
    for leg i in {1,2,3}, twist j in 1..a_i-1 with grading j/a_i.
    """
    a1, a2, a3 = orders
    labels = [(0, 1), (0, 2)]
    degrees = {(0, 1): Fraction(0), (0, 2): Fraction(1)}
    for i, a in enumerate((a1, a2, a3), start=1):
        for j in range(1, a):
            labels.append((i, j))
            degrees[(i, j)] = Fraction(j, a)
    return tuple(labels), degrees


def gw_seed_table(orders: Sequence[int]) -> CorrelatorTable:
    """Seed correlator table of P^1_{a1,a2,a3}.

    Contains the orbifold Poincare pairing, all degree-zero three-point
    values (1/a on a single leg when the twists sum to a; pairing values
    against the unit; zero otherwise), and the normalized degree-one
    correlator <D_{1,1}, D_{2,1}, D_{3,1}>_1 = 1.
    """
    labels, degrees = elliptic_orbifold_basis(orders)
    pairing = {((0, 1), (0, 2)): Fraction(1)}
    for i, a in enumerate(orders, start=1):
        for j in range(1, a):
            pairing[((i, j), (i, a - j))] = Fraction(1, a)
    table = CorrelatorTable(labels, pairing, degrees=degrees, graded=True)
    for trip in combinations_with_replacement(labels, 3):
        if not table.budget_ok(trip):
            continue
        value = Fraction(0)
        i1, j1 = trip[0]
        if all(leg == i1 for leg, _ in trip) and i1 != 0:
            if sum(j for _, j in trip) == orders[i1 - 1]:
                value = Fraction(1, orders[i1 - 1])
        if (0, 1) in trip:
            rest = list(trip)
            rest.remove((0, 1))
            value = table.pairing(rest[0], rest[1])
        table.set(trip, value, degree=0)
    table.set([(1, 1), (2, 1), (3, 1)], 1, degree=1)
    return table


def apply_divisor_rule(table: CorrelatorTable, divisor=(0, 2)) -> CorrelatorTable:
    """Extend a graded table by  <divisor, A, B, C>_d = d * <A, B, C>_d .

    The divisor insertion integrates to the curve degree against each
    stable map, so every known three-point value at degree d yields the
    four-point value with one extra divisor insertion.
    """
    if not table.graded:
        raise ValueError("divisor rule applies to degree-graded tables")
    out = table.copy()
    for key, value in table.known_items():
        insertions, degree = key
        if len(insertions) != 3:
            continue
        out.set(insertions + (divisor,), degree * value, degree=degree)
    return out
