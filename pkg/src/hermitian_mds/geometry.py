"""Affine and projective geometry over GF(q).

GF(q^2) is identified with AG(2,q) through the basis {1, eps}; a subset of
GF(q^2) is usable as an evaluation support iff it is an arc there, which is
the power condition checked by arc_condition_holds.  PG(2,q) and PG(3,q)
primitives (normalized points, lines, plane spans) back the decoder.

Points are tuples normalized so the last nonzero coordinate is 1; linear
forms (lines, planes) are coefficient tuples normalized so the first
nonzero coefficient is 1.  All enumeration orders are fixed so construction
output is reproducible byte for byte.
"""

from itertools import permutations

from .linalg import MatrixFq


def identify(F, u):
    """The point of AG(2,q) corresponding to u = u0 + eps*u1."""
    return F.decompose(u)


def collinear(F, p1, p2, p3):
    """Whether three distinct points of AG(2,q) lie on a common line."""
    if p1 == p2 or p1 == p3 or p2 == p3:
        raise ValueError("collinear needs three distinct points")
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    a, b = F.q_sub(x2, x1), F.q_sub(y2, y1)
    c, d = F.q_sub(x3, x1), F.q_sub(y3, y1)
    return F.q_sub(F.q_mul(a, d), F.q_mul(b, c)) == 0


def arc_condition_holds(F, lam):
    """Power criterion over all ordered triples of distinct elements.

    True iff ((alpha-beta)/(gamma-beta))^(q-1) != 1 for every ordered triple
    of pairwise-distinct alpha, beta, gamma in lam.  Lists with fewer than
    three elements pass vacuously; duplicates are rejected.
    """
    lam = list(lam)
    if len(set(lam)) != len(lam):
        raise ValueError("duplicate elements in arc candidate")
    for alpha, beta, gamma in permutations(lam, 3):
        ratio = F.mul(F.sub(alpha, beta), F.inv(F.sub(gamma, beta)))
        if F.pow(ratio, F.q - 1) == 1:
            return False
    return True


def arc_size_bound(F):
    # q+1 for odd q, q+2 for even q
    return F.q + 2 if F.q % 2 == 0 else F.q + 1


def validate_arc(F, lam):
    """Raise unless lam is a valid ordered arc of size within bounds."""
    lam = list(lam)
    if any(not 0 <= u < F.q2 for u in lam):
        raise ValueError("arc elements must be canonical GF(q^2) integers")
    if len(lam) < 3:
        raise ValueError("arc needs at least 3 elements")
    if len(lam) > arc_size_bound(F):
        raise ValueError(f"arc of size {len(lam)} exceeds the bound {arc_size_bound(F)}")
    if not arc_condition_holds(F, lam):
        raise ValueError("arc condition fails")
    return lam


def _extends_arc(F, pts, new_pt):
    # incremental form of the arc condition: no pair of current points is
    # collinear with the new one (equivalent to the power criterion)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if collinear(F, pts[i], pts[j], new_pt):
                return False
    return True


def _greedy_arc(F, target, node_budget=500_000):
    """Depth-first extension in integer-encoding order with backtracking.

    Stops at the first arc of the target size, else returns the largest arc
    seen before the node budget runs out.
    """
    q2 = F.q2
    ids = [identify(F, u) for u in range(q2)]
    best = []
    budget = [node_budget]

    def dfs(arc, pts, start):
        if len(arc) > len(best):
            best[:] = arc
        if len(arc) == target:
            return True
        for g in range(start, q2):
            if budget[0] <= 0:
                return False
            if _extends_arc(F, pts, ids[g]):
                budget[0] -= 1
                arc.append(g)
                pts.append(ids[g])
                if dfs(arc, pts, g + 1):
                    return True
                arc.pop()
                pts.pop()
        return False

    dfs([], [], 0)
    return best


def build_lambda(F, strategy, values=None, c=1, target=None):
    """Construct an ordered arc in GF(q^2).

    strategy 'explicit': validate the given values as-is (order preserved).
    strategy 'norm_circle': all u with norm(u) = c (c != 0), ascending.
    strategy 'greedy': backtracking search targeting the size bound.
    Every strategy re-validates through arc_condition_holds.
    """
    if strategy == "explicit":
        if values is None:
            raise ValueError("explicit strategy needs values")
        return validate_arc(F, list(values))
    if strategy == "norm_circle":
        if not 0 < c < F.q:
            raise ValueError("norm_circle needs a nonzero GF(q) target")
        lam = [u for u in F.elements() if F.norm(u) == c]
        return validate_arc(F, lam)
    if strategy == "greedy":
        if target is None:
            target = arc_size_bound(F)
        lam = _greedy_arc(F, target)
        if len(lam) < 3:
            raise ValueError("greedy search found no arc of size >= 3")
        return validate_arc(F, lam)
    raise ValueError(f"unknown arc strategy {strategy!r}")


def validate_transversal(F, s):
    """Raise unless trace restricted to s is a bijection onto GF(q)."""
    s = list(s)
    if len(s) != F.q:
        raise ValueError(f"transversal must have exactly q={F.q} elements")
    traces = [F.trace(x) for x in s]
    if sorted(traces) != list(range(F.q)):
        raise ValueError("trace values do not enumerate GF(q)")
    return s


def build_transversal(F, strategy):
    """One representative per coset of the trace-zero subgroup.

    strategy 'subfield': S = GF(q) itself (odd q only; trace(c) = 2c).
    strategy 'unit_trace': S = {c*mu : c in GF(q)} for the first mu in
    integer order with trace(mu) = 1.
    """
    if strategy == "subfield":
        if F.q % 2 == 0:
            raise ValueError("GF(q) lies in the trace kernel for even q")
        return validate_transversal(F, list(range(F.q)))
    if strategy == "unit_trace":
        mu = next(u for u in F.elements() if F.trace(u) == 1)
        return validate_transversal(F, [F.mul(c, mu) for c in range(F.q)])
    raise ValueError(f"unknown transversal strategy {strategy!r}")


# ---------------------------------------------------------------------------
# projective primitives
# ---------------------------------------------------------------------------

def normalize_point(F, v):
    """Scale a homogeneous coordinate tuple so its last nonzero entry is 1."""
    v = list(v)
    piv = None
    for j in range(len(v) - 1, -1, -1):
        if v[j]:
            piv = j
            break
    if piv is None:
        raise ValueError("zero vector is not a projective point")
    s = F.q_inv(v[piv])
    return tuple(F.q_mul(s, x) for x in v)


def normalize_form(F, v):
    """Scale a coefficient tuple so its first nonzero entry is 1."""
    v = list(v)
    piv = next((j for j, x in enumerate(v) if x), None)
    if piv is None:
        raise ValueError("zero vector is not a form")
    s = F.q_inv(v[piv])
    return tuple(F.q_mul(s, x) for x in v)


def pg2_points(F):
    """All points of PG(2,q), normalized, in a fixed order: (a,b,1) by
    ascending (a,b), then (a,1,0), then (1,0,0)."""
    q = F.q
    pts = [(a, b, 1) for a in range(q) for b in range(q)]
    pts += [(a, 1, 0) for a in range(q)]
    pts.append((1, 0, 0))
    return pts


def pg2_lines(F):
    """All lines of PG(2,q) as normalized coefficient triples, fixed order."""
    q = F.q
    lines = [(1, b, c) for b in range(q) for c in range(q)]
    lines += [(0, 1, c) for c in range(q)]
    lines.append((0, 0, 1))
    return lines


def points_on_line(F, line):
    """The q+1 points of PG(2,q) on a line given by its coefficient triple."""
    a, b, c = line
    out = []
    for p in pg2_points(F):
        acc = F.q_add(F.q_add(F.q_mul(a, p[0]), F.q_mul(b, p[1])), F.q_mul(c, p[2]))
        if acc == 0:
            out.append(p)
    return out


def span_plane(F, p1, p2, p3):
    """Coefficients of the plane of PG(3,q) through three non-collinear points."""
    M = MatrixFq(F, [list(p1), list(p2), list(p3)])
    kern = M.kernel_basis()
    if len(kern) != 1:
        raise ValueError("points are collinear (or coincide); no unique plane")
    return normalize_form(F, kern[0])


def lines_of_plane(F, plane):
    """All lines contained in a plane of PG(3,q).

    Each line is a sorted tuple of its q+1 normalized points.  The order of
    the list follows pg2_lines applied to the plane's internal coordinates,
    so it is deterministic.
    """
    basis = MatrixFq(F, [list(plane)]).kernel_basis()
    if len(basis) != 3:
        raise ValueError("not a plane")
    lines = []
    for L in pg2_lines(F):
        pts = []
        for cvec in points_on_line(F, L):
            v = [0, 0, 0, 0]
            for coef, bvec in zip(cvec, basis):
                for k in range(4):
                    v[k] = F.q_add(v[k], F.q_mul(coef, bvec[k]))
            pts.append(normalize_point(F, v))
        lines.append(tuple(sorted(pts)))
    return lines
