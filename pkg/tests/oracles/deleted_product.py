"""Independent topological oracle for two-point configuration spaces.

Triangulates a rectangle with square holes (the punctures), forms the
simplicial deleted product (pairs of disjoint simplices), which is an
equivariant deformation retract of the ordered configuration space of two
points, and passes to the swap quotient.  The rank-1 local system
"(-1) per winding of a point around a hole" is given by a Z/2 cut cocycle:
an edge gets sign -1 when it crosses the vertical cut above a hole.  Since
the system takes values +-1, parallel transport needs no direction.

No shuffle or braid-word machinery is involved.
"""

from itertools import combinations

from fnconf.exactalg import SparseMatrix, rank


def holed_rectangle(width, height, holes):
    """Simplices (sorted vertex tuples) of a triangulated grid minus open unit squares."""
    simplices = set()
    for i in range(width):
        for j in range(height):
            if (i, j) in holes:
                continue
            a, b, c, d = (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)
            for tri in ((a, b, c), (a, c, d)):
                tri = tuple(sorted(tri))
                for k in range(1, 4):
                    for face in combinations(tri, k):
                        simplices.add(face)
    return simplices


def cut_sign(u, v, holes):
    """-1 if the edge uv crosses a cut x = hx + 1/2, y >= hy + 1 of some hole."""
    (x1, y1), (x2, y2) = sorted((u, v))
    if x2 != x1 + 1:
        return 1
    crossings = 0
    ymid = (y1 + y2) / 2
    for hx, hy in holes:
        if x1 == hx and ymid >= hy + 1:
            crossings += 1
    return -1 if crossings % 2 else 1


def _transport(a, b, holes, twisted):
    if not twisted or a == b:
        return 1
    return cut_sign(a, b, holes)


def unordered_two_point_homology(width, height, holes, twisted=True):
    """Betti numbers of UConf_2(rectangle minus holes) with the winding sign system."""
    holes = set(holes)
    simplices = holed_rectangle(width, height, holes)
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    # orbit representatives: pairs (s, t) of disjoint simplices with s < t
    cells = {}
    for s in simplices:
        for t in simplices:
            if s < t and not set(s) & set(t):
                cells.setdefault(len(s) + len(t) - 2, []).append((s, t))
    index = {k: {c: i for i, c in enumerate(v)} for k, v in cells.items()}

    def canon(s, t):
        # identify s x t with (-1)^(|s||t|) t x s
        if s < t:
            return (s, t), 1
        sign = -1 if ((len(s) - 1) * (len(t) - 1)) % 2 else 1
        return (t, s), sign

    mats = {}
    for k, cl in cells.items():
        if k - 1 not in cells:
            continue
        entries = {}
        for col, (s, t) in enumerate(cl):
            ds = len(s) - 1
            terms = []
            for i in range(len(s)):
                if len(s) > 1:
                    f = s[:i] + s[i + 1:]
                    terms.append((f, t, (-1) ** i * _transport(s[0], f[0], holes, twisted)))
            for i in range(len(t)):
                if len(t) > 1:
                    f = t[:i] + t[i + 1:]
                    terms.append((s, f, (-1) ** (ds + i) * _transport(t[0], f[0], holes, twisted)))
            for a, b, v in terms:
                (a2, b2), sg = canon(a, b)
                r = index[k - 1][(a2, b2)]
                entries[(r, col)] = entries.get((r, col), 0) + v * sg
        mats[k] = SparseMatrix(len(cells[k - 1]), len(cl), {key: v for key, v in entries.items() if v})
    ranks = {k: rank(M) for k, M in mats.items()}
    return {k: len(cells[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in sorted(cells)}
