"""Side-information instances for index coding.

An instance has n messages and m receivers; receiver i demands message f(i)
and already owns the messages X_i (f(i) not among them).  Message and
receiver indices are 0-based throughout the API; the JSON file format uses
1-based indices and is converted at the boundary.

Y_i is the set of messages receiver i neither demands nor owns.  J collects
every support {f(i)} | Y with Y a subset of Y_i; the vectors whose support
lies in J are exactly the message-space directions no receiver can tell
apart from zero, which is what verification and the generalized independence
number are built on.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, InvalidInstance

GRAPH_CAP = 24  # exact independence/chromatic searches refuse larger graphs


@dataclass(frozen=True)
class Instance:
    n: int
    f: tuple
    X: tuple

    @property
    def m(self):
        return len(self.f)


def make_instance(n, f, X):
    """Build and validate an instance (0-based indices)."""
    inst = Instance(int(n), tuple(int(v) for v in f),
                    tuple(frozenset(int(x) for x in xs) for xs in X))
    validate(inst)
    return inst


def validate(inst):
    if inst.n < 1:
        raise InvalidInstance("need at least one message")
    if len(inst.f) != len(inst.X):
        raise InvalidInstance("f and X must have one entry per receiver")
    if len(inst.f) < 1:
        raise InvalidInstance("need at least one receiver")
    for i, (fi, xs) in enumerate(zip(inst.f, inst.X)):
        if not 0 <= fi < inst.n:
            raise InvalidInstance(f"receiver {i}: demand {fi} out of range")
        if not all(0 <= x < inst.n for x in xs):
            raise InvalidInstance(f"receiver {i}: side info out of range")
        if fi in xs:
            raise InvalidInstance(f"receiver {i}: demands a message it owns")


def y_set(inst, i):
    """Messages receiver i neither demands nor owns."""
    return frozenset(range(inst.n)) - {inst.f[i]} - inst.X[i]


# ---------------------------------------------------------------------------
# the support family J and the vector family I
# ---------------------------------------------------------------------------


def iter_J(inst, cap=2**22):
    """All distinct supports, sorted by (cardinality, lexicographic tuple)."""
    total = sum(2 ** len(y_set(inst, i)) for i in range(inst.m))
    if total > cap:
        raise BudgetExceeded(f"J enumeration of {total} subsets exceeds cap {cap}")
    seen = set()
    for i in range(inst.m):
        yi = sorted(y_set(inst, i))
        fi = inst.f[i]
        for r in range(len(yi) + 1):
            for sub in itertools.combinations(yi, r):
                seen.add(tuple(sorted((fi,) + sub)))
    return sorted(seen, key=lambda K: (len(K), K))


def in_J(inst, K):
    """Membership without enumeration: some receiver demands a member of K
    and can see nothing else of K."""
    Kset = frozenset(K)
    if not Kset:
        return False
    for i in range(inst.m):
        fi = inst.f[i]
        if fi in Kset and (Kset - {fi}) <= y_set(inst, i):
            return True
    return False


def iter_I(inst, field, cap=2**22):
    """Yield every nonzero vector whose support lies in J.

    Supports follow iter_J order; values on a support run through an
    ascending-code odometer (last position fastest).
    """
    q = field.q
    supports = iter_J(inst, cap)
    total = sum((q - 1) ** len(K) for K in supports)
    if total > cap:
        raise BudgetExceeded(f"I enumeration of {total} vectors exceeds cap {cap}")
    for K in supports:
        for vals in itertools.product(range(1, q), repeat=len(K)):
            z = np.zeros(inst.n, dtype=np.int64)
            for pos, v in zip(K, vals):
                z[pos] = v
            yield z


# ---------------------------------------------------------------------------
# generalized independence number
# ---------------------------------------------------------------------------


def generalized_independence_number(inst):
    """Largest H with every nonempty subset of H in J, plus one witness.

    Branch and bound over vertices in ascending order, include-branch first,
    so the first maximum-size set found is the lexicographically least
    witness.  The defining property is hereditary, which makes the
    incremental check (only subsets containing the new vertex) sound.
    """
    if inst.n > GRAPH_CAP:
        raise BudgetExceeded(f"exact search capped at {GRAPH_CAP} messages")
    roots = [v for v in range(inst.n) if in_J(inst, (v,))]

    best = [0, ()]

    def extend(H, cands):
        if len(H) > best[0]:
            best[0] = len(H)
            best[1] = tuple(H)
        for idx, v in enumerate(cands):
            if len(H) + len(cands) - idx <= best[0]:
                return
            ok = True
            for r in range(len(H) + 1):
                for sub in itertools.combinations(H, r):
                    if not in_J(inst, sub + (v,)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                extend(H + [v], cands[idx + 1:])

    extend([], roots)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# graph view (one receiver per message)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Directed graph on message vertices; succ[u] = vertices u points to."""
    n: int
    succ: tuple


def side_info_graph(inst):
    """Vertex u points to every message its receiver owns.

    Requires one receiver per message (m = n, f a bijection).
    """
    if inst.m != inst.n or sorted(inst.f) != list(range(inst.n)):
        raise InvalidInstance("graph view needs m = n and f a bijection")
    owner = {inst.f[i]: i for i in range(inst.m)}
    succ = tuple(frozenset(inst.X[owner[u]]) for u in range(inst.n))
    return Graph(inst.n, succ)


def is_symmetric(G):
    return all(u in G.succ[w] for u in range(G.n) for w in G.succ[u])


def undirected_edges(G):
    """Symmetric closure as a set of frozenset pairs."""
    out = set()
    for u in range(G.n):
        for w in G.succ[u]:
            if u != w:
                out.add(frozenset((u, w)))
    return out


def complement(G):
    """Complement of the symmetric closure (simple undirected graph)."""
    edges = undirected_edges(G)
    succ = []
    for u in range(G.n):
        succ.append(frozenset(w for w in range(G.n)
                              if w != u and frozenset((u, w)) not in edges))
    return Graph(G.n, tuple(succ))


def graph_alpha(G):
    """Maximum independent set size of the symmetric closure."""
    if G.n > GRAPH_CAP:
        raise BudgetExceeded(f"exact search capped at {GRAPH_CAP} vertices")
    edges = undirected_edges(G)
    adj = [set() for _ in range(G.n)]
    for e in edges:
        u, w = tuple(e)
        adj[u].add(w)
        adj[w].add(u)

    best = [0]

    def extend(size, cands):
        if size > best[0]:
            best[0] = size
        for idx, v in enumerate(cands):
            if size + len(cands) - idx <= best[0]:
                return
            extend(size + 1, [w for w in cands[idx + 1:] if w not in adj[v]])

    extend(0, list(range(G.n)))
    return best[0]


def chromatic_number(G):
    """Exact chromatic number of the symmetric closure."""
    if G.n > GRAPH_CAP:
        raise BudgetExceeded(f"exact search capped at {GRAPH_CAP} vertices")
    if G.n == 0:
        return 0
    edges = undirected_edges(G)
    adj = [set() for _ in range(G.n)]
    for e in edges:
        u, w = tuple(e)
        adj[u].add(w)
        adj[w].add(u)
    order = sorted(range(G.n), key=lambda v: -len(adj[v]))

    def colorable(k):
        color = {}

        def assign(pos, maxc):
            if pos == len(order):
                return True
            v = order[pos]
            used = {color[w] for w in adj[v] if w in color}
            # symmetry break: reuse an existing color or open only the next one
            for c in range(min(k, maxc + 2)):
                if c in used:
                    continue
                color[v] = c
                if assign(pos + 1, max(maxc, c)):
                    return True
                del color[v]
            return False

        return assign(0, -1)

    for k in range(1, G.n + 1):
        if colorable(k):
            return k
    return G.n


# ---------------------------------------------------------------------------
# named instance families
# ---------------------------------------------------------------------------


def odd_cycle_instance(l):
    """Cycle on 2l+1 messages: each receiver owns its two neighbours."""
    n = 2 * l + 1
    X = [frozenset(((i - 1) % n, (i + 1) % n)) for i in range(n)]
    return make_instance(n, range(n), X)


def odd_cycle_complement_instance(l):
    """Each receiver owns everything except itself and its two neighbours."""
    n = 2 * l + 1
    X = [frozenset(range(n)) - {(i - 1) % n, i, (i + 1) % n} for i in range(n)]
    return make_instance(n, range(n), X)


# ---------------------------------------------------------------------------
# JSON file format (1-based indices on disk)
# ---------------------------------------------------------------------------


def instance_to_json(inst, field=None):
    doc = {
        "m": inst.m,
        "n": inst.n,
        "f": [fi + 1 for fi in inst.f],
        "X": [sorted(x + 1 for x in xs) for xs in inst.X],
    }
    if field is not None:
        doc["q"] = field.q
        doc["p"] = field.p
        doc["e"] = field.e
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def instance_from_json(text):
    """Returns (instance, q or None)."""
    doc = json.loads(text)
    f = [fi - 1 for fi in doc["f"]]
    X = [[x - 1 for x in xs] for xs in doc["X"]]
    inst = make_instance(doc["n"], f, X)
    if "m" in doc and doc["m"] != inst.m:
        raise InvalidInstance("m does not match the number of receivers")
    q = doc.get("q")
    if q is not None and "p" in doc and "e" in doc:
        if doc["p"] ** doc["e"] != q:
            raise InvalidInstance("q, p, e are inconsistent")
    return inst, q


def save_instance(path, inst, field=None):
    with open(path, "w") as fh:
        fh.write(instance_to_json(inst, field))


def load_instance(path):
    with open(path) as fh:
        return instance_from_json(fh.read())


def instance_hash(inst):
    """Stable hex digest of the combinatorial data (field excluded)."""
    doc = {
        "m": inst.m,
        "n": inst.n,
        "f": [fi + 1 for fi in inst.f],
        "X": [sorted(x + 1 for x in xs) for xs in inst.X],
    }
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
