"""Finite groups as Cayley tables over concrete element realizations.

Elements are addressed by integer ids ``0..n-1``; id 0 is always the
identity. Realizations (quaternions, permutation tuples, matrices, pairs of
ids, automorphism maps) are kept alongside for labels and JSON dumps.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .quaternion import Quat

DEFAULT_CAP = 10_000
SEARCH_BOUND = 48
EXHAUSTIVE_ASSOC_BOUND = 48


class GroupError(Exception):
    pass


class CapExceeded(GroupError):
    pass


class SearchBoundExceeded(GroupError):
    pass


class GroupAxiomError(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotAHomomorphism(GroupError):
    pass


class NotSurjective(GroupError):
    pass


class InvalidTwist(GroupError):
    pass


class FiniteGroup:
    """Immutable finite group given by a multiplication table on ids."""

    def __init__(
        self,
        name: str,
        elements: Sequence[Hashable],
        table: Sequence[Sequence[int]],
        *,
        labels: Sequence[str] | None = None,
        kind: str = "abstract",
        audit: bool = True,
    ) -> None:
        self.name = name
        self.elements = tuple(elements)
        self.table = tuple(tuple(row) for row in table)
        self.kind = kind
        self.labels = tuple(labels) if labels is not None else tuple(str(e) for e in self.elements)
        self.index = {e: n for n, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise GroupAxiomError(f"{name}: repeated elements")
        self.identity = 0
        if audit:
            self.audit()
        row0 = self.table[0]
        self.inverse = tuple(self.table[g].index(0) for g in range(self.order))
        if any(self.table[g][0] != g or row0[g] != g for g in range(self.order)):
            raise GroupAxiomError(f"{name}: id 0 is not the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def id_of(self, element: Hashable) -> int:
        return self.index[element]

    def by_label(self, text: str) -> int:
        return self.labels.index(text)

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inverse[g], -n
        result = 0
        for _ in range(n % self.element_orders[g]):
            result = self.table[result][g]
        return result

    def conjugate(self, h: int, g: int) -> int:
        """``h g h^-1``."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def audit(self) -> None:
        """Latin square, identity, and associativity checks.

        Associativity is exhaustive up to order 48 and sampled above.
        """
        n = self.order
        ids = set(range(n))
        if len(self.table) != n:
            raise GroupAxiomError(f"{self.name}: table has wrong shape")
        for row in self.table:
            if len(row) != n or set(row) != ids:
                raise GroupAxiomError(f"{self.name}: table is not a Latin square")
        for col in zip(*self.table):
            if set(col) != ids:
                raise GroupAxiomError(f"{self.name}: table is not a Latin square")
        t = self.table
        if n <= EXHAUSTIVE_ASSOC_BOUND:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(100_000))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupAxiomError(f"{self.name}: not associative at {(a, b, c)}")

    # derived data

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            n, x = 1, g
            while x != 0:
                x = self.table[x][g]
                n += 1
            orders.append(n)
        return tuple(orders)

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset, ...]:
        seen: set[int] = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = frozenset(self.conjugate(h, g) for h in range(self.order))
            seen |= cls
            classes.append(cls)
        return tuple(classes)

    @cached_property
    def fingerprints(self) -> tuple[tuple[int, int], ...]:
        """(element order, conjugacy class size) for every element."""
        size = {}
        for cls in self.conjugacy_classes:
            for g in cls:
                size[g] = len(cls)
        return tuple((self.element_orders[g], size[g]) for g in range(self.order))

    def order_profile(self) -> Counter:
        return Counter(self.element_orders)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def generated(self, gens: Iterable[int]) -> frozenset:
        """Subgroup generated by ``gens`` (closure under right multiplication)."""
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = self.table[g][s]
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return frozenset(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if 0 not in s:
            return False
        return all(self.table[a][self.inverse[b]] in s for a in s for b in s)

    def realization_json(self, g: int):
        return _jsonable(self.elements[g])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "elements": [
                {"id": g, "label": self.labels[g], "realization": self.realization_json(g)}
                for g in range(self.order)
            ],
            "table": [list(row) for row in self.table],
        }


def _jsonable(x):
    if isinstance(x, Quat):
        return x.to_json()
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted(_jsonable(y) for y in x)
    return x


def closure(
    generators: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    *,
    name: str = "G",
    key: Callable | None = None,
    label: Callable[[Hashable], str] = str,
    kind: str = "abstract",
    cap: int = DEFAULT_CAP,
) -> FiniteGroup:
    """Smallest group containing ``generators`` under ``mul``.

    Elements are ordered identity first, then by ``key``.
    """
    if not generators:
        raise ValueError("closure needs at least one generator")
    found = set(generators)
    queue = deque(generators)
    while queue:
        x = queue.popleft()
        for s in generators:
            y = mul(x, s)
            if y not in found:
                found.add(y)
                if len(found) > cap:
                    raise CapExceeded(f"closure of {name} exceeded {cap} elements")
                queue.append(y)
    return from_multiplication(found, mul, name=name, key=key, label=label, kind=kind)


def from_multiplication(
    elements: Iterable[Hashable],
    mul: Callable,
    *,
    name: str,
    key: Callable | None = None,
    label: Callable[[Hashable], str] = str,
    kind: str = "abstract",
) -> FiniteGroup:
    elems = list(elements)
    identity = [e for e in elems if mul(e, e) == e]
    if len(identity) != 1:
        raise GroupAxiomError(f"{name}: expected exactly one idempotent, found {len(identity)}")
    rest = sorted((e for e in elems if e != identity[0]), key=key)
    ordered = identity + rest
    index = {e: n for n, e in enumerate(ordered)}
    try:
        table = [[index[mul(a, b)] for b in ordered] for a in ordered]
    except KeyError as exc:
        raise GroupAxiomError(f"{name}: set is not closed under multiplication") from exc
    return FiniteGroup(name, ordered, table, labels=[label(e) for e in ordered], kind=kind)


def subgroup(G: FiniteGroup, ids: Iterable[int], name: str | None = None) -> FiniteGroup:
    """Materialize a subset of ``G`` as a group; realizations are ids of ``G``."""
    ids = sorted(set(ids))
    if not G.is_subgroup(ids):
        raise NotASubgroup(f"subset of {G.name} is not a subgroup")
    local = {g: n for n, g in enumerate(ids)}
    table = [[local[G.mul(a, b)] for b in ids] for a in ids]
    return FiniteGroup(
        name or f"{G.name}[{len(ids)}]",
        ids,
        table,
        labels=[G.labels[g] for g in ids],
        kind=f"subgroup-of-{G.name}",
    )


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """Total map of ids, validated as a homomorphism on construction."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.order:
            raise NotAHomomorphism("map is not total")
        if not is_homomorphism(self.source, self.target, self.images):
            raise NotAHomomorphism(f"{self.name or 'map'} does not respect multiplication")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def kernel(self) -> frozenset:
        return frozenset(g for g, x in enumerate(self.images) if x == 0)

    def image(self) -> frozenset:
        return frozenset(self.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other o self``."""
        return GroupHom(self.source, other.target, tuple(other.images[x] for x in self.images))

    def inverse(self) -> "GroupHom":
        if not self.is_isomorphism():
            raise NotAHomomorphism("only isomorphisms have inverses")
        inv = [0] * self.target.order
        for g, x in enumerate(self.images):
            inv[x] = g
        return GroupHom(self.target, self.source, tuple(inv))

    def as_dict(self) -> dict[str, str]:
        return {self.source.labels[g]: self.target.labels[x] for g, x in enumerate(self.images)}


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, images: Sequence[int]) -> bool:
    gt, ht = G.table, H.table
    for a in range(G.order):
        ia, row = images[a], gt[a]
        hrow = ht[ia]
        for b in range(G.order):
            if images[row[b]] != hrow[images[b]]:
                return False
    return True


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def trivial_hom(G: FiniteGroup, H: FiniteGroup) -> GroupHom:
    return GroupHom(G, H, (0,) * G.order)


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]):
    """Propagate generator images along the right Cayley graph of ``G``.

    Returns the id map, or None when two paths disagree. A consistent
    propagation is a homomorphism; ``gens`` must generate ``G``.
    """
    mapping = [-1] * G.order
    mapping[0] = 0
    queue = deque([0])
    gt, ht = G.table, H.table
    while queue:
        g = queue.popleft()
        fg = mapping[g]
        for s, t in zip(gens, images):
            x = gt[g][s]
            y = ht[fg][t]
            if mapping[x] < 0:
                mapping[x] = y
                queue.append(x)
            elif mapping[x] != y:
                return None
    if -1 in mapping:
        raise ValueError("generators do not generate the source group")
    return tuple(mapping)


def hom_from_generators(
    G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int], name: str = ""
) -> GroupHom | None:
    mapping = _extend(G, H, gens, images)
    if mapping is None:
        return None
    return GroupHom(G, H, mapping, name)


# -- basic structure --------------------------------------------------------


def center(G: FiniteGroup) -> frozenset:
    t = G.table
    return frozenset(z for z in range(G.order) if all(t[z][g] == t[g][z] for g in range(G.order)))


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_orders[g]


def is_normal(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise NotASubgroup(f"subset is not a subgroup of {G.name}")
    return all(G.conjugate(g, h) in H for g in range(G.order) for h in H)


def cosets(G: FiniteGroup, N: frozenset) -> list[frozenset]:
    """Left cosets ``gN`` ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        c = frozenset(G.mul(g, n) for n in N)
        seen |= c
        out.append(c)
    return out


def quotient(G: FiniteGroup, N: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """Coset group ``G/N`` and the projection onto it."""
    N = frozenset(N)
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {len(N)} is not normal in {G.name}")
    cs = cosets(G, N)
    which = [0] * G.order
    for n, c in enumerate(cs):
        for g in c:
            which[g] = n
    reps = [min(c) for c in cs]
    table = [[which[G.mul(a, b)] for b in reps] for a in reps]
    labels = [G.labels[r] + ("" if len(N) == 1 else "N") for r in reps]
    Qg = FiniteGroup(name or f"{G.name}/N{len(N)}", [tuple(sorted(c)) for c in cs], table, labels=labels, kind="cosets")
    return Qg, GroupHom(G, Qg, tuple(which), "projection")


def inner_automorphism_group(G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    """``In(G)`` as a group of id maps, with ``h -> (g -> h g h^-1)``."""
    maps = {}
    for h in range(G.order):
        alpha = tuple(G.conjugate(h, g) for g in range(G.order))
        maps.setdefault(alpha, h)
    In = _map_group(f"In({G.name})", list(maps), lambda a: f"α_{G.labels[maps[a]]}")
    hom = GroupHom(G, In, tuple(In.id_of(tuple(G.conjugate(h, g) for g in range(G.order))) for h in range(G.order)), "conjugation")
    return In, hom


def _compose(a: tuple, b: tuple) -> tuple:
    """``a o b`` for id maps (``b`` applied first)."""
    return tuple(a[x] for x in b)


def _map_group(name: str, maps: list[tuple], label: Callable[[tuple], str]) -> FiniteGroup:
    return from_multiplication(maps, _compose, name=name, key=None, label=label, kind="automorphism")


# -- exact sequences --------------------------------------------------------


@dataclass
class Junction:
    position: str
    image: frozenset
    kernel: frozenset

    @property
    def exact(self) -> bool:
        return self.image == self.kernel


@dataclass
class ExactnessReport:
    junctions: list[Junction]
    injective_start: bool
    surjective_end: bool

    @property
    def exact(self) -> bool:
        return self.injective_start and self.surjective_end and all(j.exact for j in self.junctions)

    def summary(self) -> str:
        parts = [f"{j.position}: {'ok' if j.exact else 'im != ker'}" for j in self.junctions]
        parts.append(f"injective={self.injective_start}")
        parts.append(f"surjective={self.surjective_end}")
        return "; ".join(parts)


def is_exact(maps: Sequence[GroupHom]) -> ExactnessReport:
    """Exactness of ``1 -> G0 -> G1 -> ... -> Gm -> 1``.

    Junctions at both formal ends are included: the first map must be
    injective and the last surjective.
    """
    if not maps:
        raise ValueError("empty sequence")
    for f, g in zip(maps, maps[1:]):
        if f.target is not g.source:
            raise ValueError(f"maps not composable at {f.target.name}")
    junctions = [Junction(maps[0].source.name, frozenset({0}), maps[0].kernel())]
    for f, g in zip(maps, maps[1:]):
        junctions.append(Junction(f.target.name, f.image(), g.kernel()))
    last = maps[-1]
    junctions.append(Junction(last.target.name, last.image(), frozenset(range(last.target.order))))
    return ExactnessReport(junctions, maps[0].is_injective(), last.is_surjective())


@dataclass(frozen=True)
class NoSection:
    """Exhaustion certificate: every generator-image assignment was tried."""

    generators: tuple[int, ...]
    assignments_checked: int

    def __bool__(self) -> bool:
        return False


def find_section(psi: GroupHom) -> GroupHom | NoSection:
    """A homomorphism ``rho`` with ``psi o rho = id``, or an exhaustion token."""
    if not psi.is_surjective():
        raise NotSurjective(f"{psi.name or 'map'} is not onto {psi.target.name}")
    G, K = psi.source, psi.target
    gens = minimal_generating_sequence(K)
    fibres = []
    for k in gens:
        # rho(k) must map to k and have order dividing ord(k)
        fibres.append([g for g in range(G.order) if psi.images[g] == k and K.element_orders[k] % G.element_orders[g] == 0])
    checked = 0
    for images in itertools.product(*fibres):
        checked += 1
        mapping = _extend(K, G, gens, images)
        if mapping is None:
            continue
        rho = GroupHom(K, G, mapping, "section")
        if all(psi.images[rho.images[k]] == k for k in range(K.order)):
            return rho
    return NoSection(tuple(gens), checked)


# -- products ---------------------------------------------------------------


@dataclass
class SemidirectProduct:
    group: FiniteGroup
    inclusion: GroupHom
    projection: GroupHom
    section: GroupHom

    def pair(self, h: int, k: int) -> int:
        return self.group.id_of((h, k))


def semidirect_product(H: FiniteGroup, K: FiniteGroup, twist: GroupHom, name: str | None = None) -> SemidirectProduct:
    """``H x K`` with ``(h0,k0)(h1,k1) = (h0 * twist(k0)(h1), k0 k1)``.

    ``twist`` maps ``K`` into a group whose realizations are automorphisms
    of ``H`` given as id tuples (see :func:`automorphism_group`).
    """
    if twist.source is not K:
        raise InvalidTwist("twist must be defined on K")
    A = twist.target
    autos = [A.elements[twist.images[k]] for k in range(K.order)]
    for alpha in autos:
        if not isinstance(alpha, tuple) or len(alpha) != H.order or not is_homomorphism(H, H, alpha) or len(set(alpha)) != H.order:
            raise InvalidTwist("twist values are not automorphisms of H")
    return _twisted(H, K, autos, name or f"{H.name}⋊{K.name}")


def direct_product(H: FiniteGroup, K: FiniteGroup, name: str | None = None) -> SemidirectProduct:
    ident = tuple(range(H.order))
    return _twisted(H, K, [ident] * K.order, name or f"{H.name}×{K.name}")


def _twisted(H: FiniteGroup, K: FiniteGroup, autos: list[tuple], name: str) -> SemidirectProduct:
    pairs = [(h, k) for k in range(K.order) for h in range(H.order)]
    index = {p: n for n, p in enumerate(pairs)}
    table = [
        [index[(H.mul(h0, autos[k0][h1]), K.mul(k0, k1))] for (h1, k1) in pairs]
        for (h0, k0) in pairs
    ]
    labels = [f"({H.labels[h]},{K.labels[k]})" for h, k in pairs]
    P = FiniteGroup(name, pairs, table, labels=labels, kind="pair")
    inc = GroupHom(H, P, tuple(index[(h, 0)] for h in range(H.order)), "inclusion")
    proj = GroupHom(P, K, tuple(k for _, k in pairs), "projection")
    sec = GroupHom(K, P, tuple(index[(0, k)] for k in range(K.order)), "section")
    return SemidirectProduct(P, inc, proj, sec)


# -- generators, isomorphism, automorphisms ----------------------------------


def minimal_generating_sequence(G: FiniteGroup) -> list[int]:
    """Shortest generating sequence; ties go to the lexicographically first ids."""
    if G.order == 1:
        return []
    candidates = range(1, G.order)
    for r in itertools.count(1):
        for combo in itertools.combinations(candidates, r):
            if len(G.generated(combo)) == G.order:
                return list(combo)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class NotIsomorphic:
    reason: str
    assignments_checked: int = 0

    def __bool__(self) -> bool:
        return False


def _search_isos(G: FiniteGroup, H: FiniteGroup):
    """Yield every isomorphism ``G -> H`` as an id tuple."""
    gens = minimal_generating_sequence(G)
    fp_g, fp_h = G.fingerprints, H.fingerprints
    pools = [[h for h in range(H.order) if fp_h[h] == fp_g[g]] for g in gens]
    stats = {"checked": 0}

    def walk(prefix: list[int]):
        depth = len(prefix)
        if depth == len(gens):
            stats["checked"] += 1
            mapping = _extend(G, H, gens, prefix)
            if mapping is not None and len(set(mapping)) == H.order:
                yield mapping
            return
        for h in pools[depth]:
            if h in prefix:
                continue
            # partial check: the subgroup generated so far must embed consistently
            sub = [gens[n] for n in range(depth + 1)]
            sub_img = prefix + [h]
            if depth and _partial_conflict(G, H, sub, sub_img):
                continue
            yield from walk(sub_img)

    return gens, walk([]), stats


def _partial_conflict(G, H, gens, images) -> bool:
    mapping = {0: 0}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for s, t in zip(gens, images):
            x, y = G.mul(g, s), H.mul(mapping[g], t)
            if x in mapping:
                if mapping[x] != y:
                    return True
            else:
                mapping[x] = y
                queue.append(x)
    return len(set(mapping.values())) != len(mapping)


def isomorphic(G: FiniteGroup, H: FiniteGroup) -> GroupHom | NotIsomorphic:
    """An explicit isomorphism ``G -> H``, or a reason why none exists."""
    if G.order != H.order:
        return NotIsomorphic(f"orders differ: {G.order} vs {H.order}")
    if Counter(G.fingerprints) != Counter(H.fingerprints):
        if G.order_profile() != H.order_profile():
            return NotIsomorphic("element-order profiles differ")
        return NotIsomorphic("conjugacy-class fingerprints differ")
    _, it, stats = _search_isos(G, H)
    for mapping in it:
        return GroupHom(G, H, mapping, "isomorphism")
    return NotIsomorphic("exhaustive generator-image search found no isomorphism", stats["checked"])


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    if G.order > SEARCH_BOUND:
        raise SearchBoundExceeded(f"|{G.name}| = {G.order} > {SEARCH_BOUND}")
    _, it, _ = _search_isos(G, G)
    return sorted(it)


def automorphism_group(G: FiniteGroup) -> FiniteGroup:
    """``Aut(G)``; realizations are id tuples, multiplication is composition."""
    maps = automorphisms(G)
    gens = minimal_generating_sequence(G)

    def label(alpha: tuple) -> str:
        return "[" + ",".join(f"{G.labels[g]}->{G.labels[alpha[g]]}" for g in gens) + "]"

    return _map_group(f"Aut({G.name})", maps, label)


def subgroups(G: FiniteGroup) -> list[frozenset]:
    """All subgroups, by repeatedly joining with cyclic subgroups."""
    if G.order > SEARCH_BOUND:
        raise SearchBoundExceeded(f"|{G.name}| = {G.order} > {SEARCH_BOUND}")
    cyclic = {G.generated([g]): g for g in range(G.order)}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for C, g in cyclic.items():
                if C <= S:
                    continue
                J = G.generated(list(S) + [g])
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def lattice_dot(G: FiniteGroup, identify: Callable[[FiniteGroup], str | None] | None = None) -> str:
    """Subgroup lattice as a DOT digraph with maximal-containment edges."""
    subs = subgroups(G)
    lines = [f'digraph "{G.name}" {{']
    for n, S in enumerate(subs):
        text = f"|{len(S)}|"
        if identify is not None and len(S) <= 24:
            name = identify(subgroup(G, S))
            if name:
                text += f" {name}"
        lines.append(f'  s{n} [label="{text}"];')
    for a, A in enumerate(subs):
        for b, B in enumerate(subs):
            if A < B and not any(A < C < B for C in subs):
                lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
