"""Left modules over structure-constant algebras, with minimal covers.

This is the engine shared by the endomorphism-ring and triangular-matrix-ring
layers.  A module is a plain vector space with one action matrix per algebra
basis element.  Minimal projective covers are driven by the radical (the
algebra's known radical when the presentation supplies one, otherwise the
characteristic-zero trace-form radical), with column projectives Gamma*e_i
grouped into isomorphism classes so that duplicated idempotents are handled
correctly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import SCAlgebra, column_space, complement_projection, radical_sc, row_space
from .bounds import Dim, dim_max
from .errors import CompositionInconsistent, DimensionMismatch, NotSplit, QuivhomError
from .exactlin import Mat, kernel_basis, rank, solve_matrix


@dataclass
class SCModule:
    sc: SCAlgebra
    dim: int
    action: list  # one Mat per algebra basis element

    def __post_init__(self):
        if len(self.action) != self.sc.dim:
            raise DimensionMismatch("one action matrix per basis element required")
        for m in self.action:
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise DimensionMismatch("action matrices must be square of the module dimension")

    def act_vector(self, coeffs) -> Mat:
        """Matrix of the action of an algebra element given by coefficients."""
        f = self.sc.field
        out = Mat.zeros(f, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c != f.zero():
                out = out.add(self.action[i].scale(c))
        return out

    def is_zero(self) -> bool:
        return self.dim == 0

    def check(self) -> bool:
        """Unit acts as identity; action respects the structure constants."""
        f = self.sc.field
        if not self.act_vector(self.sc.unit).is_identity() and self.dim > 0:
            return False
        for i in range(self.sc.dim):
            ai = self.action[i]
            for j in range(self.sc.dim):
                lhs = ai.mul(self.action[j])
                rhs = self.act_vector(self.sc.mult[i][j])
                if lhs != rhs:
                    return False
        return True


@dataclass
class SCMap:
    source: SCModule
    target: SCModule
    mat: Mat

    def is_valid(self) -> bool:
        for i in range(self.source.sc.dim):
            if self.mat.mul(self.source.action[i]) != self.target.action[i].mul(self.mat):
                return False
        return True


def zero_sc_module(sc: SCAlgebra) -> SCModule:
    return SCModule(sc, 0, [Mat.zeros(sc.field, 0, 0) for _ in range(sc.dim)])


def regular_module(sc: SCAlgebra) -> SCModule:
    return SCModule(sc, sc.dim, [sc.left_mult_matrix(_unit_vec(sc, i)) for i in range(sc.dim)])


def _unit_vec(sc, i):
    f = sc.field
    return tuple(f.one() if j == i else f.zero() for j in range(sc.dim))


def sc_module_of_algmod(m, sc: SCAlgebra = None) -> SCModule:
    """Flatten a BQA module to a raw module over the structure-constant view."""
    from .algebra import eval_path, sc_of_bqa

    a = m.algebra
    if sc is None:
        sc = sc_of_bqa(a)
    f = a.field
    verts = list(a.quiver.vertices)
    offs, total = {}, 0
    for v in verts:
        offs[v] = total
        total += m.dims[v]
    action = []
    for p in a.basis:
        big = Mat.zeros(f, total, total)
        mat = eval_path(m, p)
        rows = big.row_list()
        for i in range(mat.rows):
            for j in range(mat.cols):
                rows[offs[p.target] + i][offs[p.source] + j] = mat.at(i, j)
        action.append(Mat.from_rows(f, rows) if total else Mat.zeros(f, 0, 0))
    return SCModule(sc, total, action)


def direct_sum_sc(sc: SCAlgebra, mods):
    mods = list(mods)
    f = sc.field
    dim = sum(m.dim for m in mods)
    action = [Mat.block_diag(f, [m.action[i] for m in mods]) if mods else Mat.zeros(f, 0, 0)
              for i in range(sc.dim)]
    total = SCModule(sc, dim, action)
    injs, projs = [], []
    at = 0
    for m in mods:
        rows = []
        for r in range(m.dim):
            row = [f.zero()] * dim
            row[at + r] = f.one()
            rows.append(row)
        p = Mat.from_rows(f, rows) if rows else Mat.zeros(f, 0, dim)
        projs.append(SCMap(total, m, p))
        injs.append(SCMap(m, total, p.transpose()))
        at += m.dim
    return total, injs, projs


def hom_basis_sc(m: SCModule, n: SCModule):
    """Basis of module maps m -> n (matrices commuting with every action)."""
    sc = m.sc
    f = sc.field
    total = n.dim * m.dim
    if total == 0:
        return []
    rows = []
    for i in range(sc.dim):
        ma, na = m.action[i], n.action[i]
        for r in range(n.dim):
            for c in range(m.dim):
                row = [f.zero()] * total
                for k in range(m.dim):
                    coef = ma.at(k, c)
                    if coef != f.zero():
                        row[r * m.dim + k] = f.add(row[r * m.dim + k], coef)
                for l in range(n.dim):
                    coef = na.at(r, l)
                    if coef != f.zero():
                        idx = l * m.dim + c
                        row[idx] = f.sub(row[idx], coef)
                if any(x != f.zero() for x in row):
                    rows.append(row)
    kers = kernel_basis(Mat.from_rows(f, rows)) if rows else \
        [Mat.column(f, [1 if i == j else 0 for i in range(total)]) for j in range(total)]
    out = []
    for k in kers:
        flat = k.column_vector()
        out.append(SCMap(m, n, Mat(f, n.dim, m.dim, tuple(flat))))
    return out


def radical_of(sc: SCAlgebra):
    if sc.known_radical is not None:
        return list(sc.known_radical)
    return radical_sc(sc)


def submodule_from_columns(m: SCModule, cols: Mat):
    """Restrict the module structure to the span of the given columns."""
    f = m.sc.field
    basis = column_space(f, [cols]) if cols.cols else Mat.zeros(f, m.dim, 0)
    action = []
    for a in m.action:
        moved = a.mul(basis)
        x = solve_matrix(basis, moved)
        if x is None:
            raise QuivhomError("span is not action-stable")
        action.append(x)
    sub = SCModule(m.sc, basis.cols, action)
    return sub, SCMap(sub, m, basis)


def radical_submodule_sc(m: SCModule):
    """J*M as an inclusion, J the algebra radical."""
    f = m.sc.field
    rad = radical_of(m.sc)
    images = [m.act_vector(r) for r in rad]
    cols = column_space(f, images) if images else Mat.zeros(f, m.dim, 0)
    return cols


def top_projection(m: SCModule):
    """Projection and section matrices for M -> M/JM."""
    f = m.sc.field
    radcols = radical_submodule_sc(m)
    return complement_projection(f, radcols)


def kernel_of_sc(f_map: SCMap):
    f = f_map.source.sc.field
    kb = kernel_basis(f_map.mat)
    cols = Mat.hstack(f, kb) if kb else Mat.zeros(f, f_map.source.dim, 0)
    return submodule_from_columns(f_map.source, cols)


class ColumnData:
    """Projectives Gamma*e_i with their isomorphism classes (split case)."""

    def __init__(self, sc: SCAlgebra):
        if sc.idempotents is None:
            raise NotSplit("algebra carries no idempotent list")
        self.sc = sc
        f = sc.field
        reg = regular_module(sc)
        self.regular = reg
        self.columns = []
        self.idem_mats = []
        rad = radical_of(sc)
        self.radical = rad
        for e in sc.idempotents:
            right_e = _right_mult_matrix(sc, e)
            col, incl = submodule_from_columns(reg, column_space(f, [right_e]))
            self.columns.append((col, incl))
            self.idem_mats.append(e)
        # split condition: dim e_i Gamma e_i / e_i J e_i == 1
        for i, e in enumerate(sc.idempotents):
            g = self._corner_dim(e, e, radical=False)
            j = self._corner_dim(e, e, radical=True)
            if g - j != 1:
                raise NotSplit(f"idempotent {i}: corner has dimension {g - j} over the radical")
        # isomorphism classes: e_i T_j != 0  <=>  dim e_i G e_j > dim e_i J e_j
        n = len(sc.idempotents)
        self.class_of = list(range(n))
        for i in range(n):
            for j in range(i):
                if self._linked(i, j):
                    self.class_of[i] = self.class_of[j]
                    break
        self.classes = {}
        for i, c in enumerate(self.class_of):
            self.classes.setdefault(c, []).append(i)

    def _corner_vectors(self, e_left, e_right, radical: bool):
        sc = self.sc
        f = sc.field
        gens = self.radical if radical else [_unit_vec(sc, i) for i in range(sc.dim)]
        vecs = []
        for g in gens:
            v = sc.multiply(sc.multiply(e_left, g), e_right)
            if any(c != f.zero() for c in v):
                vecs.append(list(v))
        return vecs

    def _corner_dim(self, e_left, e_right, radical: bool):
        vecs = self._corner_vectors(e_left, e_right, radical)
        if not vecs:
            return 0
        return rank(Mat.from_rows(self.sc.field, vecs))

    def _linked(self, i, j):
        ei, ej = self.sc.idempotents[i], self.sc.idempotents[j]
        return self._corner_dim(ei, ej, False) > self._corner_dim(ei, ej, True)

    def simple_top(self, i):
        """Top of the i-th column projective as an SCModule."""
        col, _ = self.columns[i]
        proj, sect = top_projection(col)
        action = [proj.mul(col.action[t]).mul(sect) for t in range(self.sc.dim)]
        return SCModule(self.sc, proj.rows, action)


def _right_mult_matrix(sc: SCAlgebra, x) -> Mat:
    f = sc.field
    cols = []
    for j in range(sc.dim):
        ej = _unit_vec(sc, j)
        cols.append(Mat.column(f, list(sc.multiply(ej, x))))
    return Mat.hstack(f, cols) if cols else Mat.zeros(f, 0, 0)


def projective_cover_sc(m: SCModule, coldata: ColumnData):
    """Minimal projective cover over a split structure-constant algebra."""
    sc = m.sc
    f = sc.field
    proj, sect = top_projection(m)
    top_dim = proj.rows
    if top_dim == 0:
        z = zero_sc_module(sc)
        return z, SCMap(z, m, Mat.zeros(f, m.dim, 0))
    # reached subspace of the top, grown one simple at a time
    reached = Mat.zeros(f, 0, top_dim)  # rows span the reached subspace
    pieces = []
    gens = []
    for cls, members in coldata.classes.items():
        i0 = members[0]
        e_act = m.act_vector(coldata.idem_mats[i0])
        # total top dimension contributed by this class
        cls_top = 0
        for i in members:
            ei_act = m.act_vector(coldata.idem_mats[i])
            img = proj.mul(ei_act)
            cls_top += rank(img)
        t_dim = coldata.simple_top(i0).dim
        if cls_top % t_dim != 0:
            raise CompositionInconsistent("class top dimension not divisible by simple dimension")
        mult = cls_top // t_dim
        for _ in range(mult):
            cand_cols = proj.mul(e_act)
            chosen = None
            for j in range(cand_cols.cols):
                v = cand_cols.col(j)
                if v.is_zero():
                    continue
                if reached.rows == 0 or solve_matrix(reached.transpose(), v) is None:
                    chosen = Mat.column(f, [e_act.at(r, j) for r in range(m.dim)])
                    break
            if chosen is None:
                raise CompositionInconsistent("could not find a top generator outside the reached span")
            pieces.append(i0)
            gens.append(chosen)
            # grow reached by Gamma * q(chosen)
            orbit_rows = [] if reached.rows == 0 else reached.row_list()
            for t in range(sc.dim):
                moved = proj.mul(m.action[t]).mul(chosen)
                orbit_rows.append(moved.column_vector())
            reached = row_space(f, orbit_rows)
    if reached.rows != top_dim:
        raise CompositionInconsistent("cover generators do not span the top")
    cols_mods = [coldata.columns[i][0] for i in pieces]
    total, injs, projs = direct_sum_sc(sc, cols_mods)
    # map: basis vector b of the column (inside Gamma) acts on the generator
    piece_mats = []
    for idx, i0 in enumerate(pieces):
        col, incl = coldata.columns[i0]
        cols = []
        for j in range(col.dim):
            gamma_elt = [incl.mat.at(r, j) for r in range(sc.dim)]
            cols.append(m.act_vector(gamma_elt).mul(gens[idx]))
        piece_mats.append(Mat.hstack(f, cols) if cols else Mat.zeros(f, m.dim, 0))
    pi_mat = Mat.hstack(f, piece_mats) if piece_mats else Mat.zeros(f, m.dim, 0)
    pi = SCMap(total, m, pi_mat)
    if rank(pi_mat) != m.dim:
        raise CompositionInconsistent("projective cover is not surjective")
    return total, pi


def is_projective_sc(m: SCModule, coldata: ColumnData = None) -> bool:
    """Split test against the universal map from column projectives."""
    if m.is_zero():
        return True
    sc = m.sc
    if sc.idempotents is None:
        raise NotSplit("projectivity test needs the idempotent list")
    f = sc.field
    pieces = []
    gens = []
    for e in sc.idempotents:
        e_act = m.act_vector(e)
        img = column_space(f, [e_act])
        for j in range(img.cols):
            pieces.append(e)
            gens.append(img.col(j))
    cols_data = coldata if coldata is not None else ColumnData(sc)
    idx_of = {id(e): i for i, e in enumerate(sc.idempotents)}
    col_mods = []
    piece_mats = []
    for e, g in zip(pieces, gens):
        i = idx_of[id(e)]
        col, incl = cols_data.columns[i]
        col_mods.append(col)
        cols = []
        for j in range(col.dim):
            gamma_elt = [incl.mat.at(r, j) for r in range(sc.dim)]
            cols.append(m.act_vector(gamma_elt).mul(g))
        piece_mats.append(Mat.hstack(f, cols) if cols else Mat.zeros(f, m.dim, 0))
    if not col_mods:
        return False
    total, _, _ = direct_sum_sc(sc, col_mods)
    u_mat = Mat.hstack(f, piece_mats)
    u = SCMap(total, m, u_mat)
    # solve for a module-map section s with u o s = id
    sect = _solve_section(u)
    return sect is not None


def _solve_section(u: SCMap):
    """Module-map right inverse of u, or None."""
    m, p = u.target, u.source
    sc = m.sc
    f = sc.field
    basis = hom_basis_sc(m, p)
    if not basis and m.dim > 0:
        return None
    if m.dim == 0:
        return SCMap(m, p, Mat.zeros(f, p.dim, 0))
    cols = [Mat.column(f, u.mat.mul(b.mat).flatten()) for b in basis]
    target = Mat.column(f, Mat.identity(f, m.dim).flatten())
    a = Mat.hstack(f, cols) if cols else Mat.zeros(f, m.dim * m.dim, 0)
    x = solve_matrix(a, target)
    if x is None:
        return None
    out = Mat.zeros(f, p.dim, m.dim)
    for c, b in zip(x.column_vector(), basis):
        if c != f.zero():
            out = out.add(b.mat.scale(c))
    return SCMap(m, p, out)


def pd_sc(m: SCModule, cap: int = 20, coldata: ColumnData = None) -> Dim:
    sc = m.sc
    cd = coldata if coldata is not None else ColumnData(sc)
    current = m
    for i in range(cap + 1):
        if current.is_zero():
            return Dim.finite(i)
        p, pi = projective_cover_sc(current, cd)
        k, _ = kernel_of_sc(pi)
        if k.is_zero():
            return Dim.finite(i)
        current = k
    return Dim.at_least(cap)


def gldim_sc(sc: SCAlgebra, cap: int = 20) -> Dim:
    """Max projective dimension over the simple tops of the column projectives."""
    cd = ColumnData(sc)
    vals = []
    seen_classes = set()
    for cls, members in cd.classes.items():
        seen_classes.add(cls)
        vals.append(pd_sc(cd.simple_top(members[0]), cap, cd))
    return dim_max(vals)
