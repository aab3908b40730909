"""Disjoint sets over ``range(n)``."""


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def classes(self) -> list[list[int]]:
        """Blocks as sorted lists, ordered by their smallest member."""
        blocks: dict[int, list[int]] = {}
        for a in range(len(self.parent)):
            blocks.setdefault(self.find(a), []).append(a)
        return sorted(blocks.values(), key=lambda b: b[0])
