"""Problem data model, JSON schemas, and SDPA sparse-format export.

An :class:`SdpProblem` is the output of every representation builder: named
scalar variables (tagged so callers know which ones project to matrix
entries), affine PSD block constraints stored as sparse upper triplets,
and first-class linear equalities/inequalities. Equalities stay first
class so declared sizes match the block-order accounting; they are only
expanded into inequality pairs at SDPA export time, which lacks native
equalities.

All serialization is deterministic: identical inputs produce byte
identical output.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import majorization, specgeo, symcore, sympoly
from .errors import SchemaError


@dataclass(frozen=True)
class SdpVariable:
    """A scalar variable; role ("entry", i, j) (1-based) or ("aux",)."""

    name: str
    role: tuple


@dataclass
class LinearRow:
    """Linear constraint sum_v coeffs[v] * x_v (<=|==) rhs."""

    coeffs: dict
    rhs: float


@dataclass
class SdpBlock:
    """Affine PSD constraint const + sum_v x_v * coeff[v] >= 0 (PSD).

    ``const`` and each coefficient matrix are stored as {(i, j): value}
    with 0-based i <= j; symmetry is implied.
    """

    order: int
    const: dict = field(default_factory=dict)
    coeffs: dict = field(default_factory=dict)

    def add_const(self, i, j, value):
        if value == 0.0:
            return
        key = (i, j) if i <= j else (j, i)
        self.const[key] = self.const.get(key, 0.0) + value

    def add_coeff(self, var, i, j, value):
        if value == 0.0:
            return
        key = (i, j) if i <= j else (j, i)
        mat = self.coeffs.setdefault(var, {})
        mat[key] = mat.get(key, 0.0) + value


@dataclass
class SdpProblem:
    variables: list = field(default_factory=list)
    blocks: list = field(default_factory=list)
    linear_eqs: list = field(default_factory=list)
    linear_ineqs: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    # -- construction -----------------------------------------------------

    def add_variable(self, name, role=("aux",)):
        if any(v.name == name for v in self.variables):
            raise ValueError(f"duplicate variable {name!r}")
        self.variables.append(SdpVariable(name=name, role=tuple(role)))
        return name

    def add_matrix_variables(self, d, prefix="A"):
        """Register the upper-triangle entries of a d x d symmetric matrix."""
        names = []
        for i in range(d):
            for j in range(i, d):
                names.append(
                    self.add_variable(
                        f"{prefix}_{i + 1}_{j + 1}", role=("entry", i + 1, j + 1)
                    )
                )
        return names

    def new_block(self, order):
        self.blocks.append(SdpBlock(order=order))
        return self.blocks[-1]

    def add_eq(self, coeffs, rhs):
        self.linear_eqs.append(LinearRow(coeffs=dict(coeffs), rhs=float(rhs)))

    def add_ineq(self, coeffs, rhs):
        """sum coeffs * x <= rhs."""
        self.linear_ineqs.append(LinearRow(coeffs=dict(coeffs), rhs=float(rhs)))

    # -- bookkeeping -------------------------------------------------------

    @property
    def variable_names(self):
        return [v.name for v in self.variables]

    def variable_index(self, name):
        for idx, v in enumerate(self.variables):
            if v.name == name:
                return idx
        raise KeyError(name)

    def declared_size(self):
        """Block orders plus scalar inequalities; equalities are free."""
        return sum(b.order for b in self.blocks) + len(self.linear_ineqs)

    def exported_size(self):
        """Size after SDPA export, where equalities become inequality pairs."""
        return self.declared_size() + 2 * len(self.linear_eqs)

    def validate(self):
        names = set(self.variable_names)
        if len(names) != len(self.variables):
            raise ValueError("duplicate variable names")
        for bidx, block in enumerate(self.blocks):
            for (i, j) in block.const:
                if not (0 <= i <= j < block.order):
                    raise ValueError(f"block {bidx}: const entry ({i},{j}) out of range")
            for var, mat in block.coeffs.items():
                if var not in names:
                    raise ValueError(f"block {bidx}: unknown variable {var!r}")
                for (i, j) in mat:
                    if not (0 <= i <= j < block.order):
                        raise ValueError(
                            f"block {bidx}: coeff entry ({i},{j}) out of range"
                        )
        for row in self.linear_eqs + self.linear_ineqs:
            for var in row.coeffs:
                if var not in names:
                    raise ValueError(f"linear row: unknown variable {var!r}")
        declared = self.metadata.get("size")
        if declared is not None and declared != self.declared_size():
            raise ValueError(
                f"metadata size {declared} != declared size {self.declared_size()}"
            )

    # -- JSON --------------------------------------------------------------

    def to_json_dict(self):
        def mat_entries(mat):
            return [[i, j, v] for (i, j), v in sorted(mat.items())]

        return {
            "variables": [
                {"name": v.name, "role": list(v.role)} for v in self.variables
            ],
            "blocks": [
                {
                    "order": b.order,
                    "const": mat_entries(b.const),
                    "coeffs": {
                        var: mat_entries(mat) for var, mat in sorted(b.coeffs.items())
                    },
                }
                for b in self.blocks
            ],
            "linear_eqs": [
                {"coeffs": dict(sorted(r.coeffs.items())), "rhs": r.rhs}
                for r in self.linear_eqs
            ],
            "linear_ineqs": [
                {"coeffs": dict(sorted(r.coeffs.items())), "rhs": r.rhs}
                for r in self.linear_ineqs
            ],
            "metadata": self.metadata,
        }


# -- evaluation -------------------------------------------------------------

def block_dense(block, assignment):
    """Materialize one block at a variable assignment (full symmetric)."""
    M = np.zeros((block.order, block.order))
    for (i, j), v in block.const.items():
        M[i, j] += v
        if i != j:
            M[j, i] += v
    for var, mat in block.coeffs.items():
        x = assignment[var]
        for (i, j), v in mat.items():
            M[i, j] += x * v
            if i != j:
                M[j, i] += x * v
    return M


def row_value(row, assignment):
    return float(sum(c * assignment[var] for var, c in row.coeffs.items()))


def block_stack(problem, bidx):
    """Flattened (const, coefficient matrix) pair for batched evaluation.

    Returns (c0, C, names): block value at assignment x (aligned with
    names) is (c0 + x @ C) reshaped to (order, order).
    """
    block = problem.blocks[bidx]
    n = block.order
    names = problem.variable_names
    c0 = np.zeros(n * n)
    for (i, j), v in block.const.items():
        c0[i * n + j] += v
        if i != j:
            c0[j * n + i] += v
    C = np.zeros((len(names), n * n))
    for var, mat in block.coeffs.items():
        r = names.index(var)
        for (i, j), v in mat.items():
            C[r, i * n + j] += v
            if i != j:
                C[r, j * n + i] += v
    return c0, C, names


def assignment_from_matrix(problem, A, extra=None):
    """Build an assignment mapping entry-role variables to matrix entries."""
    A = np.asarray(A, dtype=np.float64)
    out = {} if extra is None else dict(extra)
    for v in problem.variables:
        if v.role[0] == "entry":
            _, i, j = v.role
            out[v.name] = float(A[i - 1, j - 1])
    return out


# -- SDPA sparse export ------------------------------------------------------

def _fmt(x):
    return format(float(x), ".17g")


def export_sdpa(problem):
    """Serialize to SDPA sparse format (.dat-s), byte-stable.

    Convention: a problem block C + sum x_v M_v >= 0 is written as
    F_v = M_v and F_0 = -C (SDPA constrains sum x_v F_v - F_0 to be PSD).
    Scalar inequalities and equality pairs are merged into one trailing
    diagonal block with the negative-size convention. The objective row
    is all zeros: every exported problem is a feasibility problem.
    """
    problem.validate()
    names = problem.variable_names
    m = len(names)

    n_scalar = len(problem.linear_ineqs) + 2 * len(problem.linear_eqs)
    sizes = [b.order for b in problem.blocks]
    if n_scalar:
        sizes.append(-n_scalar)
    nblocks = len(sizes)

    # F matrices as {(matno, blkno, i, j): value}, 1-based indices.
    entries = {}

    def put(matno, blkno, i, j, value):
        if not math.isfinite(value):
            raise ValueError("non-finite coefficient in export")
        if value == 0.0:
            return
        key = (matno, blkno, i + 1, j + 1)
        entries[key] = entries.get(key, 0.0) + value

    for bno, block in enumerate(problem.blocks, start=1):
        for (i, j), v in block.const.items():
            put(0, bno, i, j, -v)
        for var, mat in block.coeffs.items():
            matno = names.index(var) + 1
            for (i, j), v in mat.items():
                put(matno, bno, i, j, v)

    if n_scalar:
        bno = nblocks
        row = 0
        for lin in problem.linear_ineqs:
            # sum a x <= rhs  ->  diagonal value rhs - sum a x >= 0
            put(0, bno, row, row, -lin.rhs)
            for var, c in lin.coeffs.items():
                put(names.index(var) + 1, bno, row, row, -c)
            row += 1
        for lin in problem.linear_eqs:
            put(0, bno, row, row, -lin.rhs)
            for var, c in lin.coeffs.items():
                put(names.index(var) + 1, bno, row, row, -c)
            row += 1
            put(0, bno, row, row, lin.rhs)
            for var, c in lin.coeffs.items():
                put(names.index(var) + 1, bno, row, row, c)
            row += 1

    lines = [str(m), str(nblocks), " ".join(str(s) for s in sizes)]
    lines.append(" ".join(["0"] * m))
    for (matno, blkno, i, j) in sorted(entries):
        value = entries[(matno, blkno, i, j)]
        if value == 0.0:
            continue
        lines.append(f"{matno} {blkno} {i} {j} {_fmt(value)}")
    return "\n".join(lines) + "\n"


@dataclass
class SdpaData:
    """Raw content of an SDPA sparse file."""

    m: int
    block_sizes: list
    objective: list
    entries: dict  # (matno, blkno, i, j) -> value


def parse_sdpa(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and ln[0] not in "*\""]
    m = int(lines[0])
    nblocks = int(lines[1])
    sizes = [int(tok) for tok in lines[2].split()]
    if len(sizes) != nblocks:
        raise ValueError(f"expected {nblocks} block sizes, got {len(sizes)}")
    objective = [float(tok) for tok in lines[3].split()]
    entries = {}
    for ln in lines[4:]:
        toks = ln.split()
        matno, blkno, i, j = (int(t) for t in toks[:4])
        entries[(matno, blkno, i, j)] = float(toks[4])
    return SdpaData(m=m, block_sizes=sizes, objective=objective, entries=entries)


# -- domain-object JSON ------------------------------------------------------

def _expect(condition, message, pointer):
    if not condition:
        raise SchemaError(message, pointer=pointer)


def _is_number(x):
    # bool is an int subclass; JSON true/false are not numbers here.
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _as_number_list(value, pointer):
    _expect(isinstance(value, list) and value, "expected a non-empty array", pointer)
    for idx, x in enumerate(value):
        _expect(_is_number(x), "expected a finite number", f"{pointer}/{idx}")
    return [float(x) for x in value]


def parse_problem(text):
    """Parse a domain-object JSON document.

    Recognizes the matrix, polyhedron, orbit-hull, and zonotope schemas by
    their keys; applies canonicalization (polyhedron generators are sorted
    descending, hull points must already be descending).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "expected a JSON object", "")
    _expect("d" in doc, "missing field 'd'", "")
    d = doc["d"]
    _expect(
        isinstance(d, int) and not isinstance(d, bool) and d >= 1,
        "'d' must be a positive integer",
        "/d",
    )

    if "upper" in doc:
        upper = _as_number_list(doc["upper"], "/upper")
        _expect(
            len(upper) == d * (d + 1) // 2,
            f"expected {d * (d + 1) // 2} upper-triangle entries",
            "/upper",
        )
        return symcore.sym_from_upper(d, upper)

    if "orbits" in doc:
        _expect(isinstance(doc["orbits"], list) and doc["orbits"],
                "expected a non-empty array", "/orbits")
        orbits = []
        for idx, item in enumerate(doc["orbits"]):
            ptr = f"/orbits/{idx}"
            _expect(isinstance(item, dict), "expected an object", ptr)
            _expect("a" in item, "missing field 'a'", ptr)
            _expect("b" in item, "missing field 'b'", ptr)
            a = _as_number_list(item["a"], f"{ptr}/a")
            _expect(len(a) == d, f"generator length must be {d}", f"{ptr}/a")
            _expect(any(x != 0.0 for x in a), "generator must be nonzero", f"{ptr}/a")
            b = item["b"]
            _expect(_is_number(b), "expected a finite number", f"{ptr}/b")
            orbits.append(sympoly.OrbitHalfspace(a=np.array(a), b=float(b)))
        return sympoly.SymmetricPolyhedron(d=d, orbits=tuple(orbits))

    if "points" in doc or "radius" in doc:
        points = []
        raw_points = doc.get("points", [])
        _expect(isinstance(raw_points, list), "expected an array", "/points")
        for idx, item in enumerate(raw_points):
            ptr = f"/points/{idx}"
            p = _as_number_list(item, ptr)
            _expect(len(p) == d, f"point length must be {d}", ptr)
            _expect(
                majorization.is_descending(np.array(p)),
                "point is not sorted descending",
                ptr,
            )
            points.append(np.array(p))
        radius = doc.get("radius", 0.0)
        _expect(
            _is_number(radius) and radius >= 0.0,
            "radius must be a nonnegative number",
            "/radius",
        )
        _expect(points or radius > 0.0,
                "need at least one point or a positive radius", "")
        return specgeo.OrbitHull(d=d, points=tuple(points), radius=float(radius))

    if "generators" in doc:
        _expect(isinstance(doc["generators"], list) and doc["generators"],
                "expected a non-empty array", "/generators")
        gens = []
        for idx, item in enumerate(doc["generators"]):
            ptr = f"/generators/{idx}"
            z = _as_number_list(item, ptr)
            _expect(len(z) == d, f"generator length must be {d}", ptr)
            _expect(any(x != 0.0 for x in z), "generator must be nonzero", ptr)
            gens.append(np.array(z))
        return specgeo.SpectralZonotope(d=d, generators=tuple(gens))

    raise SchemaError(
        "unrecognized document: expected one of the keys "
        "'upper', 'orbits', 'points'/'radius', 'generators'",
        pointer="",
    )
