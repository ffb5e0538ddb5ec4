class UnionFind:
    """Disjoint sets over a fixed, ordered universe.

    Class representatives are always the member that comes first in the
    universe's order, so the output of ``classes`` is deterministic.
    """

    def __init__(self, items):
        self._order = {}
        self.parent = {}
        for i, x in enumerate(items):
            self._order[x] = i
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self._order[y] < self._order[x]:
            x, y = y, x
        self.parent[y] = x
        return True

    def classes(self):
        """Map representative -> members, both in universe order."""
        out = {}
        for x in self._order:
            out.setdefault(self.find(x), []).append(x)
        return out

    def __len__(self):
        return sum(1 for x in self.parent if self.parent[x] == x)
