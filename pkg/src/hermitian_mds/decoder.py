"""Geometric decoding in PG(3,q), plus a brute-force nearest-codeword oracle.

A received word r lifts to N points (lam_i^1, lam_i^2, r_i, 1), one per
coordinate, all on the cone with vertex Z_inf = (0,0,1,0) over the base
arc Xi = {(lam_i^1, lam_i^2, 0, 1)} in the plane z = 0.  Codewords are
exactly the sections of that cone's generators by planes missing Z_inf,
i.e. planes z = c1*x + c2*y + c0*t.  Decoding searches for the codeword
plane: project the lifted points from a center P into the plane t = 0,
fit a curve of minimum degree through the projections, and look for a
linear component containing at least ceil((N+3)/2) of them; the span of P
and that line is the plane of the corrected codeword.  That count is what
"more than half" must mean for the distance guarantee to hold: with
n >= (N+3)/2 positions on the line, the returned word differs from r in
at most N - ceil((N+3)/2) = floor((N-3)/2) places, and a word within the
guaranteed radius floor((N-3)/2) of the code meets it exactly.  (For odd
N this is the same as n > (N+1)/2; for even N the weaker reading would
admit returns at distance floor((N-1)/2), breaking the guarantee that a
returned word is always within floor((N-3)/2) of what was received.)

Centers are drawn from two families, in order: the affine points of a
line of z = 0 external to Xi, then the affine points of the cone
generator over the first non-arc direction.  The second family is needed
for completeness: a codeword plane whose trace on z = 0 meets the
external line only at infinity contains no center of the first family,
and projections from a center outside the plane spread the lifted points
into an arc that never reaches the threshold (the all-constant codewords
are always in this situation).  Every codeword plane contains exactly one
affine point of the second family, because the generator's infinite point
is the cone vertex, which codeword planes avoid.  The soundness argument
(any returned word is within (N-3)/2 of the received word) only uses the
threshold count and the discard rule for lines through the vertex
direction, so it is unaffected by where the center sits.
"""

from collections import Counter
from dataclasses import dataclass

from .code import CodeSpec, enumerate_codewords, iter_messages, validate_message
from .geometry import normalize_form, normalize_point, pg2_lines, points_on_line, span_plane
from .linalg import MatrixFq


def hamming_distance(a, b) -> int:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum(1 for x, y in zip(a, b) if x != y)


def validate_word(spec: CodeSpec, r):
    r = tuple(r)
    if len(r) != spec.N:
        raise ValueError(f"word length {len(r)} != N = {spec.N}")
    if any(not 0 <= c < spec.tower.q for c in r):
        raise ValueError("symbols must be canonical GF(q) integers")
    return r


# ---------------------------------------------------------------------------
# lifting and projecting
# ---------------------------------------------------------------------------

def xi_points(spec: CodeSpec):
    """The planar base arc: one point of z=0 per arc element."""
    F = spec.tower
    return [(*F.decompose(l), 0, 1) for l in spec.lam]


def lift(spec: CodeSpec, r):
    """The N cone points (lam_i^1, lam_i^2, r_i, 1) encoding the word."""
    r = validate_word(spec, r)
    F = spec.tower
    return [(*F.decompose(l), c, 1) for l, c in zip(spec.lam, r)]


def on_cone(spec: CodeSpec, point) -> bool:
    """Membership in the cone: dropping z must land on the base arc."""
    x, y, _, t = point
    return (x, y, 0, t) in set(xi_points(spec))


def find_external_line(spec: CodeSpec):
    """First line of the plane z=0 (fixed enumeration order) avoiding the
    base arc, or None when no line is external."""
    F = spec.tower
    xi = set(xi_points(spec))
    from .geometry import lines_of_plane
    for line in lines_of_plane(F, (0, 0, 1, 0)):
        if not xi.intersection(line):
            return line
    return None


def project_from(F, P, Q):
    """Image of Q on the plane t=0 under projection from the affine point P:
    the normalized point t_P*Q - t_Q*P."""
    if P[3] == 0:
        raise ValueError("projection center must be affine")
    diff = [F.q_sub(F.q_mul(P[3], Q[k]), F.q_mul(Q[3], P[k])) for k in range(4)]
    if not any(diff):
        raise ValueError("cannot project a point from itself")
    return normalize_point(F, diff)


# ---------------------------------------------------------------------------
# homogeneous ternary forms as sparse exponent-triple dicts
# ---------------------------------------------------------------------------

def monomials(e: int):
    """Degree-e exponent triples (i,j,k), lexicographically descending."""
    return [(i, j, e - i - j) for i in range(e, -1, -1) for j in range(e - i, -1, -1)]


def form_value(F, form, pt):
    x, y, z = pt
    acc = 0
    for (i, j, k), coef in form.items():
        term = F.q_mul(coef, F.q_mul(F.q_pow(x, i), F.q_mul(F.q_pow(y, j), F.q_pow(z, k))))
        acc = F.q_add(acc, term)
    return acc


def form_mul(F, f, g):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            val = F.q_add(out.get(key, 0), F.q_mul(c1, c2))
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def linear_form(triple):
    """The sparse form a*x + b*y + c*z from a coefficient triple."""
    a, b, c = triple
    out = {}
    if a:
        out[(1, 0, 0)] = a
    if b:
        out[(0, 1, 0)] = b
    if c:
        out[(0, 0, 1)] = c
    return out


def fit_min_degree_curve(F, points):
    """Smallest-degree curves of t=0 through the given distinct points.

    Returns (e, forms): e is minimal with a nontrivial kernel of the
    evaluation matrix (rows: points; columns: degree-e monomials), and
    forms is the canonical kernel basis, each vector re-expressed as a
    sparse form.  The degree never exceeds q+1 at desk scale.
    """
    pts = list(dict.fromkeys(points))
    if not pts:
        raise ValueError("need at least one point")
    e = 1
    while True:
        mons = monomials(e)
        rows = []
        for (x, y, z) in pts:
            rows.append([
                F.q_mul(F.q_pow(x, i), F.q_mul(F.q_pow(y, j), F.q_pow(z, k)))
                for (i, j, k) in mons
            ])
        kern = MatrixFq(F, rows).kernel_basis()
        if kern:
            forms = [
                {mons[t]: v[t] for t in range(len(mons)) if v[t]}
                for v in kern
            ]
            return e, forms
        e += 1
        assert e <= F.q + 1, "fitting degree exceeded q+1"


def _divide_once(F, form, triple):
    """Exact quotient of a form by a normalized linear form, else None."""
    piv = next(i for i, c in enumerate(triple) if c)
    # triple[piv] == 1 by normalization, so synthetic division needs no scaling
    rem = dict(form)
    quot = {}
    while rem:
        key = max(rem, key=lambda m: (m[piv], m))
        if key[piv] == 0:
            return None  # leftover free of the pivot variable: not divisible
        coef = rem[key]
        qkey = list(key)
        qkey[piv] -= 1
        qkey = tuple(qkey)
        quot[qkey] = coef
        for var, lcoef in enumerate(triple):
            if not lcoef:
                continue
            mk = list(qkey)
            mk[var] += 1
            mk = tuple(mk)
            val = F.q_sub(rem.get(mk, 0), F.q_mul(coef, lcoef))
            if val:
                rem[mk] = val
            else:
                rem.pop(mk, None)
    return quot


def extract_linear_factors(F, form):
    """All linear factors of a form, with multiplicity, plus the cofactor.

    Trial division by every normalized linear form over GF(q) (first
    nonzero coefficient 1), in the fixed pg2_lines order.  The product of
    the returned factors and the cofactor reproduces the input.
    """
    if not form or not any(form.values()):
        raise ValueError("zero form has no factorization")
    factors = []
    rem = dict(form)
    for triple in pg2_lines(F):
        while True:
            quot = _divide_once(F, rem, triple)
            if quot is None:
                break
            factors.append(triple)
            rem = quot
    return factors, rem


# ---------------------------------------------------------------------------
# planes <-> messages <-> codewords
# ---------------------------------------------------------------------------

def message_to_plane(spec: CodeSpec, m):
    """(c1, c2, c0) of the plane z = c1*x + c2*y + c0*t carrying encode(m):
    c1 = T(x), c2 = T(eps*x), c0 = norm(x) + T(y)."""
    F = spec.tower
    x, y = validate_message(spec, m)
    return (F.trace(x), F.trace(F.mul(F.eps, x)),
            F.q_add(F.norm(x), F.trace(y)))


def plane_to_message(spec: CodeSpec, plane):
    """Invert message_to_plane: solve the trace pairing for x, then pick
    the transversal representative for y."""
    F = spec.tower
    c1, c2, c0 = plane
    G = MatrixFq(F, [list(spec.trace_gram[0]), list(spec.trace_gram[1])])
    sol = G.solve([c1, c2])
    if sol is None:
        raise ValueError("degenerate trace pairing")  # ruled out at construction
    x = F.compose(sol[0], sol[1])
    y = spec.s_by_trace[F.q_sub(c0, F.norm(x))]
    return (x, y)


def plane_to_codeword(spec: CodeSpec, plane):
    """Symbols c1*lam_i^1 + c2*lam_i^2 + c0: the plane's cone section."""
    F = spec.tower
    c1, c2, c0 = plane
    out = []
    for l in spec.lam:
        l1, l2 = F.decompose(l)
        out.append(F.q_add(F.q_add(F.q_mul(c1, l1), F.q_mul(c2, l2)), c0))
    return tuple(out)


def codeword_to_plane(spec: CodeSpec, w):
    """Recover (c1, c2, c0) from a codeword; raises if w is not in the code."""
    F = spec.tower
    w = validate_word(spec, w)
    rows = []
    for l in spec.lam:
        l1, l2 = F.decompose(l)
        rows.append([l1, l2, 1])
    sol = MatrixFq(F, rows).solve(list(w))
    if sol is None or plane_to_codeword(spec, tuple(sol)) != w:
        raise ValueError("word is not a codeword")
    return tuple(sol)


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecodeResult:
    codeword: tuple
    message: tuple
    corrected_positions: tuple
    witness: dict


def _cross(F, a, b):
    return (
        F.q_sub(F.q_mul(a[1], b[2]), F.q_mul(a[2], b[1])),
        F.q_sub(F.q_mul(a[2], b[0]), F.q_mul(a[0], b[2])),
        F.q_sub(F.q_mul(a[0], b[1]), F.q_mul(a[1], b[0])),
    )


def _max_collinear(F, pts):
    """Largest number of entries of pts (with repetition) on one line."""
    mult = Counter(pts)
    distinct = list(mult)
    best = max(mult.values())
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            a, b, c = _cross(F, distinct[i], distinct[j])
            n = 0
            for p in distinct:
                acc = F.q_add(F.q_add(F.q_mul(a, p[0]), F.q_mul(b, p[1])), F.q_mul(c, p[2]))
                if acc == 0:
                    n += mult[p]
            if n > best:
                best = n
    return best


def _centers(spec: CodeSpec):
    """Projection centers: affine points of the external line, then the
    affine points of the cone generator over the first non-arc direction.
    Returns None when no external line exists."""
    F = spec.tower
    ell = find_external_line(spec)
    if ell is None:
        return None
    centers = [p for p in ell if p[3] != 0]  # points at infinity are skipped
    in_arc = set(spec.lam)
    g = next(u for u in F.elements() if u not in in_arc)
    u, v = F.decompose(g)
    centers += [(u, v, w, 1) for w in range(F.q)]
    return centers


def geometric_decode(spec: CodeSpec, r):
    """Decode by plane recovery; returns a DecodeResult or None on failure.

    Within (N-3)/2 errors the transmitted codeword is always returned; any
    returned word, even beyond that radius, is within (N-3)/2 of r.
    """
    r = validate_word(spec, r)
    F = spec.tower
    N = spec.N
    centers = _centers(spec)
    if centers is None:
        # no external line: fall back to the brute-force oracle
        word, tie = ml_decode(spec, r)
        plane = codeword_to_plane(spec, word)
        return DecodeResult(
            codeword=word,
            message=plane_to_message(spec, plane),
            corrected_positions=tuple(i for i in range(N) if word[i] != r[i]),
            witness={"center": None, "factor": None, "tied_factors": [],
                     "fallback": "ml", "ml_tie": tie},
        )
    lifted = lift(spec, r)

    for P in centers:
        projs = [project_from(F, P, Q)[:3] for Q in lifted]
        # cheap skip: no line can clear the threshold at this center
        if 2 * _max_collinear(F, projs) < N + 3:
            continue
        _, forms = fit_min_degree_curve(F, projs)
        hits = []
        for form in forms:
            factors, _ = extract_linear_factors(F, form)
            for L in dict.fromkeys(factors):
                if L[2] == 0:
                    # the line passes through (0,0,1), the direction of the
                    # cone vertex; its plane carries no codeword
                    continue
                if L in hits:
                    continue
                n = sum(1 for p in projs if form_value(F, linear_form(L), p) == 0)
                if 2 * n >= N + 3:
                    hits.append(L)
        if not hits:
            continue
        L = hits[0]
        line_pts = [(x, y, z, 0) for (x, y, z) in points_on_line(F, L)]
        plane4 = span_plane(F, P, line_pts[0], line_pts[1])
        A, B, C, D = plane4
        assert C != 0, "candidate plane contains the cone vertex"
        s = F.q_neg(F.q_inv(C))
        plane = (F.q_mul(s, A), F.q_mul(s, B), F.q_mul(s, D))
        word = plane_to_codeword(spec, plane)
        return DecodeResult(
            codeword=word,
            message=plane_to_message(spec, plane),
            corrected_positions=tuple(i for i in range(N) if word[i] != r[i]),
            witness={"center": P, "factor": L, "tied_factors": hits[1:]},
        )
    return None


def ml_decode(spec: CodeSpec, r):
    """Nearest codeword by exhaustive scan; ties break toward the
    lexicographically smallest codeword and set the tie flag."""
    r = validate_word(spec, r)
    best_word = None
    best_dist = spec.N + 1
    tie = False
    for w in enumerate_codewords(spec):
        d = hamming_distance(w, r)
        if d < best_dist:
            best_word, best_dist, tie = w, d, False
        elif d == best_dist:
            tie = True
            if w < best_word:
                best_word = w
    return best_word, tie


def ml_decode_message(spec: CodeSpec, r):
    """ml_decode plus the decoded message (positions share the scan order)."""
    word, tie = ml_decode(spec, r)
    for m, w in zip(iter_messages(spec), enumerate_codewords(spec)):
        if w == word:
            return word, m, tie
    raise AssertionError("unreachable: nearest codeword not in enumeration")
