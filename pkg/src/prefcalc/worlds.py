"""Finite possible-world universes and propositions as sets of worlds.

A universe keeps its valuations as a boolean table (worlds x atoms); the
:class:`World` objects handed out are thin views over one row of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence, TypeVar, Union

import numpy as np

from prefcalc.errors import UniverseError, UniverseMismatchError

MAX_ENUMERATED_ATOMS = 20


# -- formula trees ---------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    antecedent: Formula
    consequent: Formula


Formula = Union[Atom, Not, And, Or, Implies]

T = TypeVar("T")


def fold(
    f: Formula,
    atom: Callable[[str], T],
    neg: Callable[[T], T],
    conj: Callable[[T, T], T],
    disj: Callable[[T, T], T],
    impl: Callable[[T, T], T],
) -> T:
    """Evaluate a formula tree bottom-up with the given connective semantics."""

    def go(node: Formula) -> T:
        if isinstance(node, Atom):
            return atom(node.name)
        if isinstance(node, Not):
            return neg(go(node.arg))
        if isinstance(node, And):
            return conj(go(node.left), go(node.right))
        if isinstance(node, Or):
            return disj(go(node.left), go(node.right))
        if isinstance(node, Implies):
            return impl(go(node.antecedent), go(node.consequent))
        raise UniverseError(f"malformed formula node: {node!r}")

    return go(f)


def atoms_of(f: Formula) -> set[str]:
    return fold(f, lambda n: {n}, lambda a: a, set.union, set.union, set.union)


# -- universes ------------------------------------------------------------------


@dataclass(frozen=True)
class World:
    id: int
    valuation: Mapping[str, bool]

    def __getitem__(self, atom: str) -> bool:
        return self.valuation[atom]


class _WorldSeq(Sequence[World]):
    def __init__(self, atoms: tuple[str, ...], table: np.ndarray):
        self._atoms = atoms
        self._table = table

    def __len__(self) -> int:
        return self._table.shape[0]

    def __getitem__(self, i):  # type: ignore[override]
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        row = self._table[i]
        return World(i, dict(zip(self._atoms, map(bool, row))))


class Universe:
    """Ordered atoms and ordered worlds; world ids are ``0..n-1``."""

    def __init__(self, atoms: Sequence[str], table: np.ndarray):
        table = np.asarray(table, dtype=bool)
        if table.ndim != 2 or table.shape[1] != len(atoms):
            raise UniverseError("valuation table must have one column per atom")
        table.setflags(write=False)
        self.atoms: tuple[str, ...] = tuple(atoms)
        self.table = table
        self._index = {a: i for i, a in enumerate(self.atoms)}

    @property
    def worlds(self) -> Sequence[World]:
        return _WorldSeq(self.atoms, self.table)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[World]:
        return iter(self.worlds)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Universe):
            return NotImplemented
        return self.atoms == other.atoms and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.atoms, self.table.shape, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"Universe(atoms={list(self.atoms)}, worlds={self.size})"

    def column(self, atom: str) -> np.ndarray:
        try:
            return self.table[:, self._index[atom]]
        except KeyError:
            raise UniverseError(f"unknown atom {atom!r}") from None

    def valuation(self, world_id: int) -> dict[str, bool]:
        return self.worlds[world_id].valuation  # type: ignore[return-value]

    # propositions
    def proposition(self, members: Iterable[int]) -> Proposition:
        return Proposition(self, frozenset(int(m) for m in members))

    def everything(self) -> Proposition:
        return Proposition(self, frozenset(range(self.size)))

    def nothing(self) -> Proposition:
        return Proposition(self, frozenset())


def same_universe(a: Universe, b: Universe) -> None:
    if a is not b and a != b:
        raise UniverseMismatchError("operands are defined over different universes")


def build_universe(
    atoms: Sequence[str],
    worlds: Sequence[Mapping[str, bool]] | None = None,
) -> Universe:
    """Build a universe, enumerating all valuations when ``worlds`` is None.

    Enumeration is lexicographic in atom order with False before True.
    """
    atoms = list(atoms)
    if len(set(atoms)) != len(atoms):
        dup = sorted({a for a in atoms if atoms.count(a) > 1})
        raise UniverseError(f"duplicate atoms: {dup}")
    if worlds is None:
        if len(atoms) > MAX_ENUMERATED_ATOMS:
            raise UniverseError(
                f"{len(atoms)} atoms exceeds the enumeration cap of {MAX_ENUMERATED_ATOMS}"
            )
        rows = list(itertools.product((False, True), repeat=len(atoms)))
        table = np.array(rows, dtype=bool).reshape(len(rows), len(atoms))
        return Universe(atoms, table)

    known = set(atoms)
    table = np.zeros((len(worlds), len(atoms)), dtype=bool)
    for i, val in enumerate(worlds):
        missing = known - set(val)
        extra = set(val) - known
        if missing:
            raise UniverseError(f"world {i} is missing atoms {sorted(missing)}")
        if extra:
            raise UniverseError(f"world {i} mentions unknown atoms {sorted(extra)}")
        for j, a in enumerate(atoms):
            v = val[a]
            if not isinstance(v, (bool, np.bool_)):
                raise UniverseError(f"world {i}: atom {a!r} must be boolean, got {v!r}")
            table[i, j] = bool(v)
    return Universe(atoms, table)


@dataclass(frozen=True)
class Proposition:
    """The set of world ids where a proposition holds."""

    universe: Universe
    members: frozenset[int]

    def __post_init__(self) -> None:
        n = self.universe.size
        bad = [m for m in self.members if not 0 <= m < n]
        if bad:
            raise UniverseError(f"world ids {sorted(bad)} not in universe of size {n}")

    @classmethod
    def from_mask(cls, u: Universe, mask: np.ndarray) -> Proposition:
        return cls(u, frozenset(np.flatnonzero(mask).tolist()))

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.universe.size, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def ids(self) -> list[int]:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, world_id: object) -> bool:
        return world_id in self.members

    def is_empty(self) -> bool:
        return not self.members

    def complement(self) -> Proposition:
        return Proposition(self.universe, frozenset(range(self.universe.size)) - self.members)

    def __and__(self, other: Proposition) -> Proposition:
        same_universe(self.universe, other.universe)
        return Proposition(self.universe, self.members & other.members)

    def __or__(self, other: Proposition) -> Proposition:
        same_universe(self.universe, other.universe)
        return Proposition(self.universe, self.members | other.members)

    def __invert__(self) -> Proposition:
        return self.complement()


def eval_formula(u: Universe, f: Formula) -> Proposition:
    """Worlds of ``u`` whose valuation satisfies ``f`` (classical semantics)."""
    mask = fold(
        f,
        u.column,
        np.logical_not,
        np.logical_and,
        np.logical_or,
        lambda a, b: np.logical_or(np.logical_not(a), b),
    )
    return Proposition.from_mask(u, np.broadcast_to(mask, (u.size,)))


def is_partition(u: Universe, props: Sequence[Proposition]) -> bool:
    """True iff ``props`` are pairwise disjoint and cover ``u``."""
    seen: set[int] = set()
    for p in props:
        same_universe(u, p.universe)
        if seen & p.members:
            return False
        seen |= p.members
    return len(seen) == u.size
