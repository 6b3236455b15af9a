#!/usr/bin/env python3
"""
Disjoint-set forest used to build random partitions of a subspace.
"""

from collections import Counter
from typing import Dict, Hashable, List


class UnionFind:
    """
    Disjoint sets with path compression and union by rank.

    Examples
    --------
    >>> uf = UnionFind()
    >>> uf.union(1, 2)
    >>> uf.union(4, 5)
    >>> uf.find(2) == uf.find(1)
    True
    >>> uf.find(4) == uf.find(1)
    False
    """

    def __init__(self):
        self.parent: Dict[Hashable, Hashable] = {}
        self.rank = Counter()

    def find(self, x: Hashable) -> Hashable:
        root = self.parent.setdefault(x, x)
        if root != x:
            root = self.find(root)
            self.parent[x] = root
        return root

    def union(self, x: Hashable, y: Hashable) -> None:
        px = self.find(x)
        py = self.find(y)
        if px == py:
            return
        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1

    def groups(self) -> List[List[Hashable]]:
        """Classes in order of their first-inserted member."""
        by_root: Dict[Hashable, List[Hashable]] = {}
        for x in list(self.parent):
            by_root.setdefault(self.find(x), []).append(x)
        return list(by_root.values())
