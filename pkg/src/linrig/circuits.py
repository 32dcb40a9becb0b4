"""Linear circuits: edge-labelled DAGs computing x -> xA.

Nodes are integers.  Entry (i, j) of the computed matrix is the sum over
all paths from input i to output j of the product of the edge labels, so
stacking circuits multiplies their matrices in stacking order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter

from .cyclotomic import Cyclotomic
from .families import dft_layers
from .matrix import Matrix, _norm, _scalar_from_json, _scalar_to_json, rank

__all__ = [
    "LinearCircuit",
    "evaluate",
    "evaluate_by_paths",
    "size",
    "depth",
    "circuit_sum",
    "stack",
    "negate",
    "naive_circuit",
    "identity_circuit",
    "factor_circuit",
    "rigidity_circuit",
    "layered_circuit",
    "dft_circuit",
    "generic_size_lower",
    "circuit_to_json",
    "circuit_from_json",
    "to_dot",
]


@dataclass(frozen=True)
class LinearCircuit:
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    edges: dict = field(default_factory=dict)  # (u, v) -> nonzero label
    internal: frozenset = frozenset()
    conductor: int | None = None

    def __post_init__(self):
        if len(set(self.inputs)) != len(self.inputs) or len(set(self.outputs)) != len(self.outputs):
            raise ValueError("duplicate input or output node")
        for (u, v), lab in self.edges.items():
            if lab == 0:
                raise ValueError(f"edge {u}->{v} has zero label")
            if u in self.outputs:
                raise ValueError(f"output node {u} has an outgoing edge")
            if v in self.inputs:
                raise ValueError(f"input node {v} has an incoming edge")
        _topo_order(self)

    @property
    def n_in(self) -> int:
        return len(self.inputs)

    @property
    def n_out(self) -> int:
        return len(self.outputs)

    @property
    def nodes(self) -> frozenset:
        ns = set(self.inputs) | set(self.outputs) | set(self.internal)
        for u, v in self.edges:
            ns.add(u)
            ns.add(v)
        return frozenset(ns)


def _topo_order(C: LinearCircuit) -> list:
    ts = TopologicalSorter()
    for node in sorted(C.nodes):
        ts.add(node)
    for u, v in C.edges:
        ts.add(v, u)
    try:
        return list(ts.static_order())
    except CycleError as e:
        raise ValueError(f"circuit has a cycle: {e.args[1]}") from None


def _zero(cond):
    return Fraction(0) if cond is None else Cyclotomic.zero(cond)


def evaluate(C: LinearCircuit) -> Matrix:
    """Matrix of C by forward accumulation in topological order."""
    order = _topo_order(C)
    succ: dict = {}
    for (u, v), lab in C.edges.items():
        succ.setdefault(u, []).append((v, lab))
    zero = _zero(C.conductor)
    rows = []
    for src in C.inputs:
        val = {src: Fraction(1) if C.conductor is None else Cyclotomic.one(C.conductor)}
        for u in order:
            x = val.get(u)
            if x is None or x == 0:
                continue
            for v, lab in succ.get(u, ()):
                val[v] = val.get(v, zero) + x * lab
        rows.append([val.get(t, zero) for t in C.outputs])
    M = Matrix(rows, C.conductor)
    if not rows:
        M.ncols = C.n_out
    return M


def evaluate_by_paths(C: LinearCircuit) -> Matrix:
    """Literal path enumeration; exponential, for cross-checking small circuits."""
    succ: dict = {}
    for (u, v), lab in C.edges.items():
        succ.setdefault(u, []).append((v, lab))
    zero = _zero(C.conductor)
    out_pos = {t: j for j, t in enumerate(C.outputs)}
    rows = []
    for src in C.inputs:
        row = [zero] * C.n_out
        stack_ = [(src, Fraction(1))]
        while stack_:
            u, w = stack_.pop()
            if u in out_pos:
                row[out_pos[u]] = row[out_pos[u]] + w
            for v, lab in succ.get(u, ()):
                stack_.append((v, w * lab))
        rows.append(row)
    return Matrix(rows, C.conductor)


def size(C: LinearCircuit) -> int:
    return len(C.edges)


def depth(C: LinearCircuit) -> int:
    """Length of a longest input-to-output path (0 if there is none)."""
    order = _topo_order(C)
    succ: dict = {}
    for u, v in C.edges:
        succ.setdefault(u, []).append(v)
    best = 0
    outs = set(C.outputs)
    for src in C.inputs:
        dist = {src: 0}
        for u in order:
            if u not in dist:
                continue
            for v in succ.get(u, ()):
                if dist[u] + 1 > dist.get(v, -1):
                    dist[v] = dist[u] + 1
        best = max([best] + [d for t, d in dist.items() if t in outs])
    return best


# ---------------------------------------------------------------- composition

def _build(inputs, outputs, edge_list, internal, conductor) -> LinearCircuit:
    """Relabel arbitrary hashable node names to 0..N-1 (inputs, outputs, rest)
    and merge parallel edges, dropping cancelled ones."""
    names = list(inputs) + list(outputs)
    seen = set(names)
    rest = []
    for u, v, _ in edge_list:
        for x in (u, v):
            if x not in seen:
                seen.add(x)
                rest.append(x)
    for x in internal:
        if x not in seen:
            seen.add(x)
            rest.append(x)
    ids = {x: k for k, x in enumerate(names + rest)}
    merged: dict = {}
    for u, v, lab in edge_list:
        key = (ids[u], ids[v])
        merged[key] = merged[key] + lab if key in merged else lab
    edges = {k: lab for k, lab in merged.items() if lab != 0}
    return LinearCircuit(
        inputs=tuple(ids[x] for x in inputs),
        outputs=tuple(ids[x] for x in outputs),
        edges=edges,
        internal=frozenset(ids[x] for x in rest),
        conductor=conductor,
    )


def _common_conductor(a, b):
    if a is not None and b is not None and a != b:
        raise ValueError(f"conductor mismatch {a} vs {b}")
    return a if a is not None else b


def circuit_sum(C1: LinearCircuit, C2: LinearCircuit) -> LinearCircuit:
    """Identify inputs and outputs, add adjacency matrices.

    evaluate(circuit_sum(C1, C2)) == evaluate(C1) + evaluate(C2).
    """
    if C1.n_in != C2.n_in or C1.n_out != C2.n_out:
        raise ValueError(f"arity mismatch: {C1.n_in}->{C1.n_out} vs {C2.n_in}->{C2.n_out}")
    cond = _common_conductor(C1.conductor, C2.conductor)

    def namer(C, tag):
        pos_in = {x: k for k, x in enumerate(C.inputs)}
        pos_out = {x: k for k, x in enumerate(C.outputs)}

        def name(x):
            if x in pos_in:
                return ("in", pos_in[x])
            if x in pos_out:
                return ("out", pos_out[x])
            return (tag, x)
        return name

    n1, n2 = namer(C1, "a"), namer(C2, "b")
    edge_list = [(n1(u), n1(v), lab) for (u, v), lab in C1.edges.items()]
    edge_list += [(n2(u), n2(v), lab) for (u, v), lab in C2.edges.items()]
    internal = [n1(x) for x in C1.internal] + [n2(x) for x in C2.internal]
    return _build([("in", k) for k in range(C1.n_in)], [("out", k) for k in range(C1.n_out)],
                  edge_list, internal, cond)


def stack(C1: LinearCircuit, C2: LinearCircuit) -> LinearCircuit:
    """Feed the outputs of C1 into the inputs of C2.

    evaluate(stack(C1, C2)) == evaluate(C1) @ evaluate(C2).
    """
    if C1.n_out != C2.n_in:
        raise ValueError(f"cannot stack: C1 has {C1.n_out} outputs, C2 has {C2.n_in} inputs")
    cond = _common_conductor(C1.conductor, C2.conductor)
    out1 = {x: k for k, x in enumerate(C1.outputs)}
    in2 = {x: k for k, x in enumerate(C2.inputs)}

    def n1(x):
        return ("mid", out1[x]) if x in out1 else ("a", x)

    def n2(x):
        return ("mid", in2[x]) if x in in2 else ("b", x)

    edge_list = [(n1(u), n1(v), lab) for (u, v), lab in C1.edges.items()]
    edge_list += [(n2(u), n2(v), lab) for (u, v), lab in C2.edges.items()]
    internal = [n1(x) for x in C1.internal] + [n2(x) for x in C2.internal]
    internal += [("mid", k) for k in range(C1.n_out)]
    return _build([n1(x) for x in C1.inputs], [n2(x) for x in C2.outputs],
                  edge_list, internal, cond)


def negate(C: LinearCircuit) -> LinearCircuit:
    """Circuit computing -evaluate(C): labels on edges leaving inputs are negated."""
    ins = set(C.inputs)
    edges = {e: (-lab if e[0] in ins else lab) for e, lab in C.edges.items()}
    return LinearCircuit(C.inputs, C.outputs, edges, C.internal, C.conductor)


# ---------------------------------------------------------------- builders

def naive_circuit(M: Matrix) -> LinearCircuit:
    """Depth-one circuit with one edge per nonzero entry of M."""
    n, m = M.shape
    edges = {(i, n + j): v for i, j, v in M.entries() if v != 0}
    return LinearCircuit(tuple(range(n)), tuple(range(n, n + m)), edges,
                         conductor=M.conductor)


def identity_circuit(n: int, wires: int | None = None, conductor: int | None = None) -> LinearCircuit:
    """Edges input k -> output k for the first ``wires`` of n wires."""
    w = n if wires is None else wires
    one = Fraction(1) if conductor is None else Cyclotomic.one(conductor)
    edges = {(k, n + k): one for k in range(w)}
    return LinearCircuit(tuple(range(n)), tuple(range(n, 2 * n)), edges, conductor=conductor)


def _column_basis_factor(A: Matrix) -> tuple[Matrix, Matrix]:
    """A = A1 @ A2 with A1 the lexicographically first basis of A's column space."""
    n, m = A.shape
    pivots = []
    for j in range(m):
        trial = pivots + [j]
        if rank(A.submatrix(range(n), trial)) == len(trial):
            pivots = trial
    A1 = A.submatrix(range(n), pivots)
    zero = _zero(A.conductor)
    coords = [[zero] * m for _ in pivots]
    from .matrix import solve
    for j in range(m):
        x = solve(A1, [A[i, j] for i in range(n)])
        assert x is not None
        for k, v in enumerate(x):
            coords[k][j] = v
    A2 = Matrix(coords, A.conductor)
    if not pivots:
        A2.ncols = m
    return A1, A2


def factor_circuit(A: Matrix, r: int) -> LinearCircuit:
    """Depth-two circuit through rank(A) <= r middle nodes computing A."""
    rk = rank(A)
    if rk > r:
        raise ValueError(f"rank(A) = {rk} exceeds r = {r}")
    n, m = A.shape
    if rk == 0:
        return LinearCircuit(tuple(range(n)), tuple(range(n, n + m)), {}, conductor=A.conductor)
    A1, A2 = _column_basis_factor(A)
    mid0 = n + m
    edges = {}
    for i, k, v in A1.entries():
        if v != 0:
            edges[(i, mid0 + k)] = v
    for k, j, v in A2.entries():
        if v != 0:
            edges[(mid0 + k, n + j)] = v
    return LinearCircuit(tuple(range(n)), tuple(range(n, n + m)), edges,
                         internal=frozenset(range(mid0, mid0 + rk)), conductor=A.conductor)


def rigidity_circuit(A: Matrix, B: Matrix, r: int) -> LinearCircuit:
    """Low-rank part through r middle nodes plus a sparse depth-one part; computes A + B."""
    return circuit_sum(factor_circuit(A, r), naive_circuit(B))


def layered_circuit(layers: list[Matrix]) -> LinearCircuit:
    """Stack of naive circuits, one per factor; computes the product of the layers."""
    if not layers:
        raise ValueError("need at least one layer")
    C = naive_circuit(layers[0])
    for L in layers[1:]:
        C = stack(C, naive_circuit(L))
    return C


def dft_circuit(k: int) -> LinearCircuit:
    """Butterfly circuit of depth k and size 2^(k+1) k computing DFT_(2^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return layered_circuit(dft_layers(k))


def generic_size_lower(d: int) -> int:
    """A general point of a d-dimensional matrix variety needs a circuit of size >= d."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    return d


# ---------------------------------------------------------------- I/O

def circuit_to_json(C: LinearCircuit) -> dict:
    d = {
        "inputs": list(C.inputs),
        "outputs": list(C.outputs),
        "edges": [{"from": u, "to": v, "label": _scalar_to_json(lab)}
                  for (u, v), lab in sorted(C.edges.items())],
    }
    if C.conductor is not None:
        d["conductor"] = C.conductor
    if C.internal:
        d["internal"] = sorted(C.internal)
    return d


def circuit_from_json(d: dict) -> LinearCircuit:
    cond = d.get("conductor")
    edges = {}
    for e in d["edges"]:
        key = (e["from"], e["to"])
        if key in edges:
            raise ValueError(f"duplicate edge {key}")
        lab = _scalar_from_json(e["label"], cond)
        edges[key] = _norm(lab)
    return LinearCircuit(tuple(d["inputs"]), tuple(d["outputs"]), edges,
                         frozenset(d.get("internal", ())), cond)


def to_dot(C: LinearCircuit) -> str:
    lines = ["digraph circuit {", "  rankdir=TB;"]
    for k, x in enumerate(C.inputs):
        lines.append(f'  {x} [shape=box,label="in{k + 1}"];')
    for k, x in enumerate(C.outputs):
        lines.append(f'  {x} [shape=box,label="out{k + 1}"];')
    for (u, v), lab in sorted(C.edges.items()):
        lines.append(f'  {u} -> {v} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines)


def dumps(C: LinearCircuit) -> str:
    return json.dumps(circuit_to_json(C))
