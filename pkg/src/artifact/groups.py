"""Finite groups by multiplication table, product-free sets and bipartite Cayley graphs.

Known minimum nontrivial representation dimensions k for the shipped
generators: abelian groups (cyclic and products of cyclics) have k = 1, and so
do the symmetric groups (sign character) and dihedral groups.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import BiindependentPair, BipartiteGraph
from .spectral import h_hat

MAX_PRODUCT_FREE_ORDER = 20


class GroupError(ValueError):
    pass


class SearchCapExceeded(GroupError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple  # table[a][b] = index of a*b
    name: str = ""
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0:
            raise GroupError("empty table")
        full = set(range(n))
        for row in t:
            if len(row) != n or set(row) != full:
                raise GroupError("table is not a Latin square")
        for c in range(n):
            if {t[r][c] for r in range(n)} != full:
                raise GroupError("table is not a Latin square")
        ids = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
        if not ids:
            raise GroupError("no identity element")
        arr = np.array(t)
        # (ab)c == a(bc) for all triples, vectorized
        left = arr[arr, :]  # left[a, b, c] = (ab)c
        right = arr[:, arr]  # right[a, b, c] = a(bc)
        if not np.array_equal(left, right):
            raise GroupError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        t = self.table
        return next(e for e in range(self.order) if all(t[e][a] == a for a in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)

    def is_abelian(self) -> bool:
        arr = np.array(self.table)
        return bool(np.array_equal(arr, arr.T))

    def to_dict(self) -> dict:
        d = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.name:
            d["name"] = self.name
        return d


def group_from_dict(data: dict) -> FiniteGroup:
    table = data["table"]
    if "order" in data and data["order"] != len(table):
        raise GroupError("order does not match the table size")
    return FiniteGroup(tuple(map(tuple, table)), data.get("name", ""))


def load_group(path) -> FiniteGroup:
    with open(path) as fh:
        return group_from_dict(json.load(fh))


def dump_group(G: FiniteGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_dict(), fh)


# ---------------------------------------------------------------- generators


def _from_elements(elements: list, op, name: str) -> FiniteGroup:
    index = {g: i for i, g in enumerate(elements)}
    table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, name, tuple(elements))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("order must be positive")
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, f"Z{n}")


def cyclic_product(a: int, b: int) -> FiniteGroup:
    """Z_a x Z_b; element (i, j) has index i*b + j."""
    elems = [(i, j) for i in range(a) for j in range(b)]
    return _from_elements(elems, lambda x, y: ((x[0] + y[0]) % a, (x[1] + y[1]) % b), f"Z{a}xZ{b}")


def symmetric(k: int) -> FiniteGroup:
    """S_k on tuples; (p*q)(i) = p(q(i)). Identity is index 0."""
    elems = list(itertools.permutations(range(k)))
    return _from_elements(elems, lambda p, q: tuple(p[q[i]] for i in range(k)), f"S{k}")


def permutation_sign(p: tuple) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def odd_permutations(G: FiniteGroup) -> list[int]:
    """Indices of odd permutations in a group built by `symmetric`."""
    return [i for i, p in enumerate(G.labels) if permutation_sign(p) < 0]


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; (s, r) is x -> (-1)^s x + r mod n."""
    if n < 1:
        raise GroupError("n must be positive")
    elems = [(s, r) for s in (0, 1) for r in range(n)]

    def op(a, b):
        # a(b(x)) with b(x) = (-1)^sb x + rb
        sa, ra = a
        sb, rb = b
        return ((sa + sb) % 2, (ra + (-1) ** sa * rb) % n)

    return _from_elements(elems, op, f"D{n}")


GROUPS = {"z": cyclic, "zz": cyclic_product, "s": symmetric, "d": dihedral}


def group_from_spec(spec: str) -> FiniteGroup:
    """z5, z2xz2, s3, s4, d4."""
    s = spec.lower()
    if "x" in s:
        a, b = s.split("x")
        return cyclic_product(int(a.lstrip("z")), int(b.lstrip("z")))
    kind, num = s[0], s[1:]
    if kind not in ("z", "s", "d") or not num.isdigit():
        raise GroupError(f"unknown group {spec!r}")
    return GROUPS[kind](int(num))


# ---------------------------------------------------------------- product-free sets


def _check_subset(G: FiniteGroup, A) -> list[int]:
    A = sorted(set(int(a) for a in A))
    if any(a < 0 or a >= G.order for a in A):
        raise GroupError("subset index out of range")
    return A


def is_product_free(G: FiniteGroup, A) -> bool:
    A = _check_subset(G, A)
    S = set(A)
    return all(G.table[a][b] not in S for a in A for b in A)


def max_product_free(G: FiniteGroup, cap: int = MAX_PRODUCT_FREE_ORDER) -> tuple[int, list[int]]:
    """Exact largest product-free set by branch and bound over elements."""
    n = G.order
    if n > cap:
        raise SearchCapExceeded(f"group order {n} exceeds the search cap {cap}")
    t = G.table
    e = G.identity
    cand = [g for g in range(n) if g != e]
    best: list[int] = []

    def extend(pos: int, chosen: list[int], members: set, products: set):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(cand) - pos <= len(best):
            return
        for idx in range(pos, len(cand)):
            if len(chosen) + len(cand) - idx <= len(best):
                return
            x = cand[idx]
            if x in products:
                continue
            new = {t[x][x]} | {t[a][x] for a in chosen} | {t[x][a] for a in chosen}
            if x in new or new & members:
                continue
            members.add(x)
            chosen.append(x)
            extend(idx + 1, chosen, members, products | new)
            chosen.pop()
            members.discard(x)

    extend(0, [], set(), set())
    return len(best), sorted(best)


def cayley_bipartite(G: FiniteGroup, A) -> BipartiteGraph:
    """Both parts are copies of G; u ~ v iff uv lies in A. |A|-regular."""
    A = _check_subset(G, A)
    if not A:
        raise GroupError("connection set must be nonempty")
    S = set(A)
    n = G.order
    edges = [(u, v) for u in range(n) for v in range(n) if G.table[u][v] in S]
    return BipartiteGraph(n, n, edges)


def product_free_pair(G: FiniteGroup, A) -> BiindependentPair:
    A = _check_subset(G, A)
    return BiindependentPair(A, A)


def gowers_report(G: FiniteGroup, A, k: int, tol: float = 1e-9) -> dict:
    """Eigenvalue and size bounds for a product-free set A, with k the smallest
    dimension of a nontrivial representation (supplied by the caller)."""
    A = _check_subset(G, A)
    if k < 1:
        raise GroupError("k must be a positive integer")
    if not is_product_free(G, A):
        raise GroupError("A is not product-free")
    n, a = G.order, len(A)
    H = cayley_bipartite(G, A)
    sv = np.sort(np.linalg.svd(H.biadjacency(), compute_uv=False))[::-1]
    lam2 = float(sv[1]) if n > 1 else 0.0
    lam_bound = math.sqrt(a * (n - a) / k)
    hh = h_hat(H)
    cap = n / (1 + k ** (1 / 3))
    pair_ok = product_free_pair(G, A).is_valid_in(H)
    checks = {
        "eigenvalue_bound": lam2 <= lam_bound + tol,
        "size_cap": a <= cap + tol,
        "half_size_le_h_hat": a / 2 <= hh + tol,
        "pair_biindependent": bool(pair_ok),
    }
    return {
        "group": G.name,
        "order": n,
        "A": A,
        "k": k,
        "lambda2": lam2,
        "lambda2_bound": lam_bound,
        "h_hat": hh,
        "size_cap": cap,
        "checks": checks,
        "ok": all(checks.values()),
    }
