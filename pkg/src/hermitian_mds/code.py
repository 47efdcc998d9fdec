"""Construction and analysis of the evaluation code.

A code instance is determined by a field tower, an ordered arc Lambda in
GF(q^2) (one coordinate per element) and a transversal S of the trace-zero
subgroup.  The codeword for a message (x, y) in Omega = GF(q^2) x S has
symbols

    norm(x) + trace(y) + trace(lambda_i * x)        (one per lambda_i)

which is the Z=1 evaluation of the Hermitian form
X^{q+1} + Y^q Z + Y Z^q + lambda^q X^q Z + lambda X Z^q.  The resulting
code is q-ary, has q^3 words, dimension 3 and minimum distance N-2; all of
that is re-verified by enumeration rather than assumed.
"""

import math
from itertools import combinations

from .fields import FieldTower, tower_for_q
from .geometry import (
    build_lambda,
    build_transversal,
    validate_arc,
    validate_transversal,
)
from .linalg import MatrixFq

ENUMERATION_BUDGET = 1 << 20  # max q^3 for exhaustive codeword scans

# Known reference instance over GF(25), eps a root of X^2 - X + 2:
# the arc is eps^{3,4,8,15,16,20} and S is the prime field.  Its generator
# matrix and weight counts serve as frozen cross-checks.
REFERENCE_Q5_GQ2 = [2, 4, 1]
REFERENCE_Q5_LAMBDA = [23, 12, 11, 7, 18, 19]
REFERENCE_Q5_G_ROWS = [
    [1, 1, 1, 1, 1, 1],
    [0, 1, 0, 2, 1, 2],
    [0, 0, 1, 2, 2, 1],
]
REFERENCE_Q5_WEIGHTS = {4: 60, 5: 24, 6: 40}


class CodeSpec:
    """Immutable description of one code instance.

    Validates the arc, the transversal, and the 2x2 trace pairing on the
    basis {1, eps} (the decoder inverts that pairing, so a degenerate one
    would be fatal; for a separable extension it never is).
    """

    def __init__(self, tower: FieldTower, lam, s):
        self.tower = tower
        self.lam = validate_arc(tower, lam)
        self.s = validate_transversal(tower, s)
        self.N = len(self.lam)
        self.s_by_trace = {tower.trace(y): y for y in self.s}
        self.s_set = frozenset(self.s)
        self.s0 = self.s_by_trace[0]
        g11 = tower.trace(1)
        g12 = tower.trace(tower.eps)
        g22 = tower.trace(tower.mul(tower.eps, tower.eps))
        det = tower.q_sub(tower.q_mul(g11, g22), tower.q_mul(g12, g12))
        if det == 0:
            raise ValueError("degenerate trace pairing on {1, eps}")
        self.trace_gram = ((g11, g12), (g12, g22))
        self._codewords = None

    def __eq__(self, other):
        if not isinstance(other, CodeSpec):
            return NotImplemented
        return (self.tower, self.lam, self.s) == (other.tower, other.lam, other.s)

    def __repr__(self):
        return f"CodeSpec(q={self.tower.q}, N={self.N})"


def validate_message(spec: CodeSpec, m):
    x, y = m
    if not 0 <= x < spec.tower.q2 or y not in spec.s_set:
        raise ValueError(f"message {m} outside the domain GF(q^2) x S")
    return x, y


def form_eval(spec: CodeSpec, lam_val: int, x: int, y: int) -> int:
    """Evaluate one coordinate form at (x, y).

    Computed as norm(x) + trace(y) + trace(lam_val * x) and checked against
    the literal five-term polynomial evaluation; the two must agree
    identically.
    """
    F = spec.tower
    fast = F.q_add(F.q_add(F.norm(x), F.trace(y)), F.trace(F.mul(lam_val, x)))
    literal = F.add(
        F.add(F.add(F.pow(x, F.q + 1), F.pow(y, F.q)), y),
        F.add(F.mul(F.pow(lam_val, F.q), F.pow(x, F.q)), F.mul(lam_val, x)),
    )
    assert literal == fast, "trace/norm evaluation disagrees with the literal form"
    return fast


def encode(spec: CodeSpec, m) -> tuple:
    x, y = validate_message(spec, m)
    return tuple(form_eval(spec, l, x, y) for l in spec.lam)


def iter_messages(spec: CodeSpec):
    """All of Omega in deterministic order: x ascending, y in S order."""
    for x in spec.tower.elements():
        for y in spec.s:
            yield (x, y)


def enumerate_codewords(spec: CodeSpec):
    """All q^3 codewords, in iter_messages order (cached on the instance)."""
    if spec._codewords is None:
        q = spec.tower.q
        if q ** 3 > ENUMERATION_BUDGET:
            raise ValueError(f"enumeration budget exceeded for q={q}")
        words = [encode(spec, m) for m in iter_messages(spec)]
        if len(set(words)) != q ** 3:
            raise AssertionError("encoding is not injective on the domain")
        spec._codewords = words
    return spec._codewords


def generator_matrix(spec: CodeSpec) -> MatrixFq:
    """Canonical 3xN generator: first three independent codewords in scan
    order, row-reduced to rref."""
    F = spec.tower
    rows = []
    for m in iter_messages(spec):
        cand = rows + [list(encode(spec, m))]
        if MatrixFq(F, cand).rank() == len(cand):
            rows = cand
            if len(rows) == 3:
                break
    if len(rows) < 3:
        raise ValueError("code has rank < 3; spec is broken")
    return MatrixFq(F, rows).rref()[0]


def min_distance(spec: CodeSpec) -> int:
    return min(sum(1 for c in w if c) for w in enumerate_codewords(spec) if any(w))


def is_mds(spec: CodeSpec) -> bool:
    """d == N-2, cross-checked against nonsingularity of all 3-column minors."""
    by_distance = min_distance(spec) == spec.N - 2
    G = generator_matrix(spec)
    cols = list(zip(*G.rows))
    by_minors = all(
        MatrixFq(spec.tower, [list(r) for r in zip(cols[i], cols[j], cols[k])]).rank() == 3
        for i, j, k in combinations(range(spec.N), 3)
    )
    assert by_distance == by_minors, "distance and minor criteria disagree"
    return by_distance


def weight_distribution(spec: CodeSpec, method: str = "enumerate"):
    """Map i -> number of codewords of weight i, for i in 0..N."""
    N, q = spec.N, spec.tower.q
    if method == "enumerate":
        counts = {i: 0 for i in range(N + 1)}
        for w in enumerate_codewords(spec):
            counts[sum(1 for c in w if c)] += 1
        return counts
    if method == "formula":
        counts = {i: 0 for i in range(N + 1)}
        counts[0] = 1
        for i in range(N - 2, N + 1):
            counts[i] = math.comb(N, i) * (q - 1) * sum(
                (-1) ** j * math.comb(i - 1, j) * q ** (i - j - N + 2)
                for j in range(i - N + 3)
            )
        return counts
    raise ValueError(f"unknown method {method!r}")


def expanded_closed_forms(spec: CodeSpec):
    """The three expanded closed-form weight counts (A_{N-2}, A_{N-1}, A_N).

    The first two agree with enumeration on every tested instance.  The
    A_N expression overcounts by exactly 1 on every tested instance, so
    callers must treat enumeration as ground truth and surface the
    difference as information, never adopt this value.
    """
    N, q = spec.N, spec.tower.q
    a_nm2 = (N * N - N) * (q - 1) // 2
    a_nm1 = N * q * q - (N * N - N) * q + N * N - 2 * N
    a_n = q ** 3 - N * q * q + ((N * N - N) * q - N * N + 3 * N) // 2
    return a_nm2, a_nm1, a_n


# ---------------------------------------------------------------------------
# closure structure on messages
# ---------------------------------------------------------------------------

def msg_add(spec: CodeSpec, m1, m2):
    """The message whose codeword is the symbol-wise sum.

    x adds; y needs the cross-term correction from
    norm(x0+x1) = norm(x0) + norm(x1) + (x0^q x1 + x1^q x0).  The raw
    combination y0 + y1 - x0^q x1 need not lie in S, but codewords depend
    on y only through trace(y), so it is canonicalized to the
    S-representative of the same trace.  Subtracting only one cross term is
    deliberate: the two terms are conjugate, so the trace of one is already
    their full sum, and subtracting both would double the correction.
    """
    F = spec.tower
    x0, y0 = validate_message(spec, m1)
    x1, y1 = validate_message(spec, m2)
    x2 = F.add(x0, x1)
    raw = F.sub(F.add(y0, y1), F.mul(F.frobenius(x0), x1))
    return (x2, spec.s_by_trace[F.trace(raw)])


def msg_scale(spec: CodeSpec, kappa: int, m):
    """The message whose codeword is the kappa-multiple (kappa in GF(q)).

    The y-part is the S-representative with
    trace(y) = (kappa - kappa^2) * norm(x0) + kappa * trace(y0).
    """
    F = spec.tower
    if not 0 <= kappa < F.q:
        raise ValueError(f"scalar {kappa} outside GF(q)")
    x0, y0 = validate_message(spec, m)
    x = F.mul(kappa, x0)
    target = F.q_add(
        F.q_mul(F.q_sub(kappa, F.q_mul(kappa, kappa)), F.norm(x0)),
        F.q_mul(kappa, F.trace(y0)),
    )
    return (x, spec.s_by_trace[target])


# ---------------------------------------------------------------------------
# pairwise and common zeros over the message domain
# ---------------------------------------------------------------------------

def pairwise_intersection_count(spec: CodeSpec, lam1: int, lam2: int) -> int:
    """Number of common zeros in Omega of the forms at two arc elements."""
    if lam1 == lam2:
        raise ValueError("need two distinct arc elements")
    if lam1 not in spec.lam or lam2 not in spec.lam:
        raise ValueError("both elements must belong to the arc")
    count = 0
    for x, y in iter_messages(spec):
        if form_eval(spec, lam1, x, y) == 0 and form_eval(spec, lam2, x, y) == 0:
            count += 1
    return count


def common_zero_set(spec: CodeSpec):
    """Messages at which every coordinate form vanishes."""
    out = set()
    for m in iter_messages(spec):
        if all(c == 0 for c in encode(spec, m)):
            out.add(m)
    return out


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

FORMAT_HEADER = "hermitian-mds v1"


def to_text(spec: CodeSpec) -> str:
    """Canonical line-oriented serialization (UTF-8, one key=value per line)."""
    t = spec.tower
    lines = [FORMAT_HEADER, f"p={t.p}", f"h={t.h}"]
    if t.h > 1:
        lines.append("gq=" + ",".join(str(c) for c in t.gq))
    lines.append("gq2=" + ",".join(str(c) for c in t.gq2))
    lines.append("lambda=" + ",".join(str(u) for u in spec.lam))
    lines.append("s=" + ",".join(str(u) for u in spec.s))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> dict:
    """Syntax pass of the text format: header, key set, integer values.

    '#' starts a comment, blank lines are skipped.  Returns the parsed
    fields without any mathematical validation, so callers can report
    "file is malformed" and "file makes false claims" separately.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != FORMAT_HEADER:
        raise ValueError(f"missing header line {FORMAT_HEADER!r}")
    fields = {}
    for line in lines[1:]:
        if "=" not in line:
            raise ValueError(f"malformed line {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key in fields:
            raise ValueError(f"duplicate key {key!r}")
        fields[key] = value.strip()
    required = {"p", "h", "gq2", "lambda", "s"}
    allowed = required | {"gq"}
    if not required <= set(fields) or not set(fields) <= allowed:
        raise ValueError(f"keys must be {sorted(allowed)} (gq only when h>1)")

    def ints(key):
        try:
            return [int(tok) for tok in fields[key].split(",")]
        except ValueError:
            raise ValueError(f"non-integer value in {key!r}") from None

    try:
        p, h = int(fields["p"]), int(fields["h"])
    except ValueError:
        raise ValueError("p and h must be integers") from None
    if h == 1 and "gq" in fields:
        raise ValueError("gq present but h=1")
    if h > 1 and "gq" not in fields:
        raise ValueError("gq required when h>1")
    return {
        "p": p,
        "h": h,
        "gq": ints("gq") if h > 1 else None,
        "gq2": ints("gq2"),
        "lambda": ints("lambda"),
        "s": ints("s"),
    }


def spec_from_fields(fields: dict) -> CodeSpec:
    """Semantic pass: build the field tower and validate the instance."""
    tower = FieldTower(fields["p"], fields["h"], gq=fields["gq"], gq2=fields["gq2"])
    return CodeSpec(tower, fields["lambda"], fields["s"])


def from_text(text: str) -> CodeSpec:
    """Parse and validate the text format in one step."""
    return spec_from_fields(parse_text(text))


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------

def reference_instance() -> CodeSpec:
    """The worked GF(25) example: modulus X^2 - X + 2, the 6-element arc of
    eps-powers, S = GF(5)."""
    tower = FieldTower(5, gq2=REFERENCE_Q5_GQ2)
    return CodeSpec(tower, REFERENCE_Q5_LAMBDA, list(range(5)))


def is_reference_instance(spec: CodeSpec) -> bool:
    return spec == reference_instance()


def construct_code(q: int, arc_strategy: str = None, s_strategy: str = None,
                   arc_values=None, norm_c: int = 1, gq=None, gq2=None) -> CodeSpec:
    """Build an instance for a prime power q with sensible defaults.

    Odd q: arc = norm_circle (q+1 points), S = the subfield.
    Even q: arc = greedy search (targets q+2), S = unit_trace multiples.
    """
    tower = tower_for_q(q, gq=gq, gq2=gq2)
    if arc_strategy is None:
        arc_strategy = "norm_circle" if q % 2 else "greedy"
    if s_strategy is None:
        s_strategy = "subfield" if q % 2 else "unit_trace"
    lam = build_lambda(tower, arc_strategy, values=arc_values, c=norm_c)
    s = build_transversal(tower, s_strategy)
    return CodeSpec(tower, lam, s)
