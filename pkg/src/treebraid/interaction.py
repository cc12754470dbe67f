"""The interaction complex K_nT and the strong/weak/none trichotomy."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .morse import _compositions
from .tree import RootedPlaneTree, TreeError, components


@dataclass(frozen=True, order=True)
class InteractionVertex:
    """A generator <k, x, p, q> of degree one."""
    k: int
    x: int
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))

    @property
    def r(self) -> int:
        return len(self.p)

    def sort_key(self):
        return (self.x, self.r, self.k, self.p, self.q)

    def to_json(self) -> dict:
        return {"k": self.k, "x": self.x, "p": list(self.p), "q": list(self.q)}

    def __str__(self):
        return f"<{self.k},{self.x},{self.p},{self.q}>"


def validate_vertex(tree: RootedPlaneTree, v: InteractionVertex, n: int) -> None:
    if v.x not in tree.essential:
        raise TreeError(f"vertex {v.x} is not essential")
    if len(v.p) < 1 or len(v.q) < 1 or len(v.p) + len(v.q) != tree.degree(v.x) - 1:
        raise TreeError(f"{v}: need r, s >= 1 with r + s = {tree.degree(v.x) - 1}")
    if min((v.k,) + v.p + v.q) < 0 or not any(v.p):
        raise TreeError(f"{v}: entries must be non-negative with p > 0")
    if v.k + sum(v.p) + sum(v.q) != n - 1:
        raise TreeError(f"{v}: k + |p| + |q| must equal {n - 1}")


def enumerate_vnt(tree: RootedPlaneTree, n: int) -> list[InteractionVertex]:
    out = []
    for x in tree.essential:
        d = tree.degree(x) - 1
        for k in range(n):
            for stacks in _compositions(n - 1 - k, d):
                for r in range(1, d):
                    if any(stacks[:r]):
                        out.append(InteractionVertex(k, x, stacks[:r], stacks[r:]))
    out.sort(key=InteractionVertex.sort_key)
    return out


def _check_family(family: Sequence[InteractionVertex]) -> tuple[int, ...]:
    xs = tuple(v.x for v in family)
    if len(set(xs)) != len(xs):
        raise TreeError("repeated essential vertex in family")
    if list(xs) != sorted(xs):
        raise TreeError("family must be ascending in x")
    return xs


def local_information(tree: RootedPlaneTree, family: Sequence[InteractionVertex], j: int,
                      key: tuple[int, int]) -> int:
    """C-local information of the j-th member (1-based) for component ``key``."""
    xs = _check_family(family)
    comp = components(tree, xs)
    nu = family[j - 1]
    i, ell = key
    if i == j:
        return nu.p[ell - 1] if ell <= nu.r else nu.q[ell - 1 - nu.r]
    return nu.k if xs[j - 1] in comp.bounding[key] else 0


def is_face(tree: RootedPlaneTree, n: int, family: Sequence[InteractionVertex],
            strict: bool = True) -> bool:
    """The simplex condition, checked directly from local information.

    With ``strict=False`` only the non-strict inequalities are checked, which
    is the weak-interaction condition.
    """
    family = sorted(family, key=InteractionVertex.sort_key)
    xs = tuple(v.x for v in family)
    if len(set(xs)) != len(xs):
        return False
    if not family:
        return True
    comp = components(tree, xs)
    m = len(family)
    for key, bound in comp.bounding.items():
        total = sum(local_information(tree, family, j, key) for j in range(1, m + 1))
        if total < n * (len(bound) - 1):
            return False
    if not strict:
        return True
    for i, nu in enumerate(family, start=1):
        if not any(sum(local_information(tree, family, j, (i, ell)) for j in range(1, m + 1))
                   > n * (len(comp.bounding[(i, ell)]) - 1) for ell in range(1, nu.r + 1)):
            return False
    return True


@dataclass(frozen=True)
class InteractionParams:
    R0: int
    P: tuple[tuple[int, ...], ...]
    Q: tuple[tuple[int, ...], ...]

    def total(self) -> int:
        return self.R0 + sum(map(sum, self.P)) + sum(map(sum, self.Q))


def interaction_params(tree: RootedPlaneTree, n: int,
                       family: Sequence[InteractionVertex]) -> InteractionParams:
    xs = _check_family(family)
    comp = components(tree, xs)
    k = {v.x: v.k for v in family}

    def shift(key):
        return sum(k[x] - n for x in comp.leaves(key))

    R0 = n + shift((0, 1))
    P, Q = [], []
    for i, nu in enumerate(family, start=1):
        P.append(tuple(nu.p[ell - 1] + shift((i, ell)) for ell in range(1, nu.r + 1)))
        Q.append(tuple(nu.q[ell - 1] + shift((i, ell + nu.r)) for ell in range(1, len(nu.q) + 1)))
    return InteractionParams(R0, tuple(P), tuple(Q))


class Interaction(Enum):
    STRONG = "strong"
    WEAK = "weak"
    NONE = "none"


def classify_params(par: InteractionParams) -> Interaction:
    if par.R0 < 0 or any(min(t) < 0 for t in par.P + par.Q):
        return Interaction.NONE
    if all(any(t) for t in par.P):
        return Interaction.STRONG
    return Interaction.WEAK


def classify_interaction(tree: RootedPlaneTree, n: int,
                         family: Sequence[InteractionVertex]) -> Interaction:
    xs = [v.x for v in family]
    if len(set(xs)) != len(xs):
        return Interaction.NONE
    family = sorted(family, key=InteractionVertex.sort_key)
    return classify_params(interaction_params(tree, n, family))


def knt_faces(tree: RootedPlaneTree, n: int, up_to_dim: int | None = None
              ) -> list[list[tuple[InteractionVertex, ...]]]:
    """Faces by dimension (index 0 holds the vertices).

    Faces are grown one vertex at a time in increasing x, which reaches every
    face because subsets of faces are faces.
    """
    verts = enumerate_vnt(tree, n)
    layers = [[(v,) for v in verts]]
    while layers[-1] and (up_to_dim is None or len(layers) <= up_to_dim):
        nxt = []
        for face in layers[-1]:
            top = face[-1].x
            for v in verts:
                if v.x > top and is_face(tree, n, face + (v,)):
                    nxt.append(face + (v,))
        if not nxt:
            break
        layers.append(nxt)
    if not layers[0]:
        return []
    return layers


def f_vector(tree: RootedPlaneTree, n: int) -> list[int]:
    return [len(layer) for layer in knt_faces(tree, n)]


def is_flag(tree: RootedPlaneTree, n: int) -> bool:
    """Every clique of the 1-skeleton is a face."""
    verts = enumerate_vnt(tree, n)
    edges = {frozenset(f) for f in (knt_faces(tree, n, 1) + [[], []])[1]}
    cliques = [(v,) for v in verts]
    while cliques:
        grown = []
        for c in cliques:
            for v in verts:
                if v.x > c[-1].x and all(frozenset((u, v)) in edges for u in c):
                    if not is_face(tree, n, c + (v,)):
                        return False
                    grown.append(c + (v,))
        cliques = grown
    return True
