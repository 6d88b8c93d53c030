import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.core.exceptions import NotALattice, PosetError
from src.models.function_model import Carrier, Element

logger = logging.getLogger(__name__)


class Poset:
    """Finite partial order stored as a boolean matrix over carrier indices."""

    def __init__(self, carrier: Carrier, leq_matrix: np.ndarray):
        matrix = np.array(leq_matrix, dtype=bool)
        k = len(carrier)
        if matrix.shape != (k, k):
            raise PosetError(f"Order matrix has shape {matrix.shape}, expected {(k, k)}")
        if not matrix.diagonal().all():
            raise PosetError("Relation is not reflexive")
        if np.any(matrix & matrix.T & ~np.eye(k, dtype=bool)):
            raise PosetError("Relation is not antisymmetric")
        composed = (matrix.astype(np.int64) @ matrix.astype(np.int64)) > 0
        if np.any(composed & ~matrix):
            raise PosetError("Relation is not transitive")
        matrix.setflags(write=False)
        self.carrier = carrier
        self.leq_matrix = matrix

    @classmethod
    def from_covers(cls, carrier: Carrier, covers: Iterable[Tuple[Element, Element]]) -> "Poset":
        """Reflexive-transitive closure of a list of pairs x < y."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(carrier)))
        for lower, upper in covers:
            graph.add_edge(carrier.index_of(lower), carrier.index_of(upper))
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [carrier.elements[u] for u, _ in nx.find_cycle(graph)]
            raise PosetError(f"Cover list violates antisymmetry along {cycle}")
        closure = nx.transitive_closure_dag(graph)
        matrix = np.eye(len(carrier), dtype=bool)
        for u, v in closure.edges:
            matrix[u, v] = True
        return cls(carrier, matrix)

    @classmethod
    def chain_of(cls, carrier: Carrier) -> "Poset":
        """The chain following the carrier's index order."""
        k = len(carrier)
        return cls(carrier, np.triu(np.ones((k, k), dtype=bool)))

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, Poset) and self.carrier == other.carrier
                and np.array_equal(self.leq_matrix, other.leq_matrix))

    def __hash__(self) -> int:
        return hash((self.carrier, self.leq_matrix.tobytes()))

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"Poset({self.carrier.name!r}, covers={self.covers()})"

    def leq(self, x: Element, y: Element) -> bool:
        return bool(self.leq_matrix[self.carrier.index_of(x), self.carrier.index_of(y)])

    def lt(self, x: Element, y: Element) -> bool:
        return x != y and self.leq(x, y)

    @cached_property
    def strict_pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Index pairs (u, v) with u < v in the order, sorted by (u, v)."""
        k = len(self.carrier)
        return tuple((u, v) for u in range(k) for v in range(k) if u != v and self.leq_matrix[u, v])

    def upper_bounds(self, u: int, v: int) -> np.ndarray:
        return np.flatnonzero(self.leq_matrix[u] & self.leq_matrix[v])

    def lower_bounds(self, u: int, v: int) -> np.ndarray:
        return np.flatnonzero(self.leq_matrix[:, u] & self.leq_matrix[:, v])

    def least_upper_bound(self, u: int, v: int) -> Optional[int]:
        bounds = self.upper_bounds(u, v)
        least = [w for w in bounds if self.leq_matrix[w, bounds].all()]
        return int(least[0]) if least else None

    def greatest_lower_bound(self, u: int, v: int) -> Optional[int]:
        bounds = self.lower_bounds(u, v)
        greatest = [w for w in bounds if self.leq_matrix[bounds, w].all()]
        return int(greatest[0]) if greatest else None

    def is_chain(self) -> bool:
        return bool((self.leq_matrix | self.leq_matrix.T).all())

    def ranks(self) -> np.ndarray:
        """Length of the longest chain below each element."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.carrier)))
        graph.add_edges_from(self.strict_pairs)
        ranks = np.zeros(len(self.carrier), dtype=np.int64)
        for v in nx.topological_sort(graph):
            for u in graph.predecessors(v):
                ranks[v] = max(ranks[v], ranks[u] + 1)
        return ranks

    def covers(self) -> List[Tuple[Element, Element]]:
        """Hasse diagram edges, sorted by carrier index."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.carrier)))
        graph.add_edges_from(self.strict_pairs)
        reduction = nx.transitive_reduction(graph)
        elements = self.carrier.elements
        return [(elements[u], elements[v]) for u, v in sorted(reduction.edges)]


class Lattice:
    """A poset in which every pair has a meet and a join, with both tables precomputed."""

    def __init__(self, poset: Poset, meet_table: np.ndarray, join_table: np.ndarray):
        self.poset = poset
        self.meet_table = np.asarray(meet_table, dtype=np.int64)
        self.join_table = np.asarray(join_table, dtype=np.int64)
        self.meet_table.setflags(write=False)
        self.join_table.setflags(write=False)

    @classmethod
    def from_poset(cls, poset: Poset) -> "Lattice":
        k = len(poset)
        meet = np.zeros((k, k), dtype=np.int64)
        join = np.zeros((k, k), dtype=np.int64)
        for u, v in itertools.product(range(k), repeat=2):
            glb = poset.greatest_lower_bound(u, v)
            lub = poset.least_upper_bound(u, v)
            if glb is None or lub is None:
                names = poset.carrier.elements
                raise NotALattice(f"{names[u]!r} and {names[v]!r} lack a meet or a join")
            meet[u, v], join[u, v] = glb, lub
        lattice = cls(poset, meet, join)
        if not lattice.check_axioms():
            raise NotALattice(f"Meet and join tables of {poset.carrier.name!r} fail the lattice axioms")
        return lattice

    @property
    def carrier(self) -> Carrier:
        return self.poset.carrier

    def meet(self, x: Element, y: Element) -> Element:
        index = self.carrier.index_of
        return self.carrier.elements[self.meet_table[index(x), index(y)]]

    def join(self, x: Element, y: Element) -> Element:
        index = self.carrier.index_of
        return self.carrier.elements[self.join_table[index(x), index(y)]]

    @property
    def bottom(self) -> Element:
        return self.carrier.elements[int(np.flatnonzero(self.poset.leq_matrix.all(axis=1))[0])]

    @property
    def top(self) -> Element:
        return self.carrier.elements[int(np.flatnonzero(self.poset.leq_matrix.all(axis=0))[0])]

    def check_axioms(self) -> bool:
        """Commutativity and absorption of the stored tables."""
        meet, join = self.meet_table, self.join_table
        x, y = np.indices(meet.shape)
        return bool(np.array_equal(meet, meet.T) and np.array_equal(join, join.T)
                    and np.all(meet[x, join[x, y]] == x) and np.all(join[x, meet[x, y]] == x))


@dataclass(frozen=True)
class DirectednessReport:
    upwards: bool
    downwards: bool
    bidirected: bool
    pseudo_directed: bool

    def to_dict(self) -> Dict:
        return {"upwards": self.upwards, "downwards": self.downwards,
                "bidirected": self.bidirected, "pseudo_directed": self.pseudo_directed}


@dataclass(frozen=True)
class ComparableWitness:
    """Essentiality witness whose two differing coordinates are comparable (base_i < replacement)."""

    index: int
    base: Tuple[Element, ...]
    replacement: Element
    lower_value: Any
    upper_value: Any


@dataclass(frozen=True)
class MonotoneMinorWitness:
    """c < d with f(.., c, .., c, ..) < f(.., d, .., d, ..) at positions i and j."""

    i: int
    j: int
    c: Element
    d: Element
    lower: Tuple[Element, ...]
    upper: Tuple[Element, ...]


# Fixture catalogue

def chain(k: int) -> Poset:
    return Poset.chain_of(Carrier.of_size(k, name=f"chain{k}"))


def antichain(k: int) -> Poset:
    return Poset(Carrier.of_size(k, name=f"antichain{k}"), np.eye(k, dtype=bool))


def v_poset() -> Poset:
    """a < b, a < c, b and c incomparable."""
    return Poset.from_covers(Carrier("V", ("a", "b", "c")), [("a", "b"), ("a", "c")])


def diamond_m3() -> Poset:
    carrier = Carrier("M3", ("0", "a", "b", "c", "1"))
    return Poset.from_covers(carrier, [("0", m) for m in "abc"] + [(m, "1") for m in "abc"])


def pentagon_n5() -> Poset:
    carrier = Carrier("N5", ("0", "a", "b", "c", "1"))
    return Poset.from_covers(carrier, [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def boolean_square() -> Poset:
    carrier = Carrier("2x2", ("00", "01", "10", "11"))
    return Poset.from_covers(carrier, [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")])


def bowtie() -> Poset:
    """Bounded, hence bidirected, but a1, a2 have two minimal upper bounds b1, b2: not a lattice."""
    carrier = Carrier("bowtie", ("bot", "a1", "a2", "b1", "b2", "top"))
    covers = [("bot", "a1"), ("bot", "a2")]
    covers += [(a, b) for a in ("a1", "a2") for b in ("b1", "b2")]
    covers += [("b1", "top"), ("b2", "top")]
    return Poset.from_covers(carrier, covers)


_NAMED = {
    "v": v_poset,
    "m3": diamond_m3,
    "n5": pentagon_n5,
    "square": boolean_square,
    "bowtie": bowtie,
}


def poset_by_name(name: str) -> Poset:
    """Catalogue lookup: ``chain:K``, ``antichain:K``, ``v``, ``m3``, ``n5``, ``square``, ``bowtie``."""
    key, _, size = name.partition(":")
    key = key.strip().lower()
    if key in ("chain", "antichain"):
        if not size.isdigit() or int(size) < 1:
            raise PosetError(f"Fixture {name!r} needs a positive size, e.g. {key}:3")
        return chain(int(size)) if key == "chain" else antichain(int(size))
    if key not in _NAMED:
        raise PosetError(f"Unknown poset fixture {name!r}")
    return _NAMED[key]()
