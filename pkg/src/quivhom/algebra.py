"""Finite-dimensional base algebras presented by quivers with admissible relations.

A :class:`BQA` carries a basis of path normal forms obtained by row-reducing
the relation-ideal spanning set over paths of bounded length; the bound ``N``
must kill every path of length ``N`` (checked, error otherwise).  Left modules
are stored as representations of the base quiver: a dimension per vertex and a
matrix per arrow.  Minimal projective covers, syzygies, projective dimension
and global dimension all live here, together with the raw structure-constant
algebras used for endomorphism rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .bounds import Dim, dim_max
from .errors import (
    AlgebraMismatch,
    CharPNotSupported,
    CompositionInconsistent,
    DimensionMismatch,
    NotAdmissible,
    QuivhomError,
    RelationNotParallel,
)
from .exactlin import Field, Mat, kernel_basis, rank, rref, solve_matrix
from .quiver import Path, Quiver, arrow_path, concat, make_quiver, trivial_path


def _paths_up_to(q: Quiver, n: int):
    """All paths of length <= n (works with cycles), grouped by length."""
    by_len = [[trivial_path(v) for v in q.vertices]]
    for _ in range(n):
        nxt = []
        for p in by_len[-1]:
            for a in sorted(q.arrows_from(p.target), key=lambda a: a.name):
                nxt.append(concat(p, arrow_path(a)))
        by_len.append(nxt)
    return by_len


def _path_key(p: Path):
    return (p.length, p.source, p.target, p.arrows)


class BQA:
    """Bound quiver algebra over a field; basis = path normal forms."""

    def __init__(self, field: Field, quiver: Quiver, relations, nbound: int, name: str = ""):
        if nbound < 1:
            raise QuivhomError("nilpotency bound must be >= 1")
        self.field = field
        self.quiver = quiver
        self.nbound = nbound
        self.name = name
        self.relations = []
        for rel in relations:
            terms = [(field.of_int(c) if isinstance(c, int) else c, p) for c, p in rel]
            if not terms:
                continue
            src = {p.source for _, p in terms}
            tgt = {p.target for _, p in terms}
            if len(src) != 1 or len(tgt) != 1 or any(p.length < 2 for _, p in terms):
                raise RelationNotParallel(f"relation terms must be parallel paths of length >= 2: {rel}")
            self.relations.append(tuple(terms))
        self._build()

    # -- construction -----------------------------------------------------
    def _build(self):
        by_len = _paths_up_to(self.quiver, self.nbound)
        paths = [p for level in by_len for p in level]
        paths.sort(key=_path_key)
        index = {p: i for i, p in enumerate(paths)}
        npaths = len(paths)
        f = self.field

        span_rows = []
        # spanning set of the relation ideal inside the length <= N window:
        # y * r * x in traversal order (y, relation term, x), overlong terms drop
        for rel in self.relations:
            a = rel[0][1].source
            b = rel[0][1].target
            min_len = min(p.length for _, p in rel)
            lefts = [p for p in paths if p.target == a]
            rights = [p for p in paths if p.source == b]
            for y in lefts:
                for x in rights:
                    if y.length + x.length + min_len > self.nbound:
                        continue
                    row = [f.zero()] * npaths
                    nonzero = False
                    for c, p in rel:
                        if y.length + p.length + x.length > self.nbound:
                            continue
                        full = concat(concat(y, p), x)
                        row[index[full]] = f.add(row[index[full]], c)
                        nonzero = True
                    if nonzero:
                        span_rows.append(row)

        if span_rows:
            red, rk, pivots = rref(Mat.from_rows(f, span_rows))
            self._rows = red.row_list()[:rk]
            self._pivots = list(pivots)
        else:
            self._rows = []
            self._pivots = []
        pivot_of = {c: i for i, c in enumerate(self._pivots)}
        pivset = set(self._pivots)

        # normal form of every enumerated path
        basis_paths = [p for p in paths if index[p] not in pivset and p.length < self.nbound]
        self.basis = tuple(basis_paths)
        self._bindex = {p: i for i, p in enumerate(self.basis)}
        dim = len(self.basis)
        self.dim = dim
        zero = f.zero()

        nf = {}
        for p in paths:
            col = index[p]
            if col in pivot_of:
                row = self._rows[pivot_of[col]]
                vec = [zero] * dim
                for q, j in self._bindex.items():
                    c = row[index[q]]
                    if c != zero:
                        vec[j] = f.neg(c)
                nf[p] = tuple(vec)
            elif p.length >= self.nbound:
                # non-pivot long path: only admissible if it never occurs
                nf[p] = None
            else:
                vec = [zero] * dim
                vec[self._bindex[p]] = f.one()
                nf[p] = tuple(vec)
        # admissibility: every path of length N must reduce to zero
        for p in by_len[self.nbound]:
            v = nf[p]
            if v is None or any(c != zero for c in v):
                raise NotAdmissible(
                    f"path {p} of length {self.nbound} is nonzero modulo the relations")
        self._nf = nf
        self._products = {}
        self._vertex_paths = {v: [p for p in self.basis if p.source == v] for v in self.quiver.vertices}

    # -- structure ---------------------------------------------------------
    def path_nf(self, p: Path):
        """Normal-form coefficient vector of a path (zero if length > bound)."""
        got = self._nf.get(p)
        if got is not None:
            return got
        return (self.field.zero(),) * self.dim

    def product(self, i: int, j: int):
        """b_i * b_j in function-composition order (b_j acts first)."""
        key = (i, j)
        got = self._products.get(key)
        if got is not None:
            return got
        p, q = self.basis[i], self.basis[j]
        f = self.field
        if p.source != q.target or p.length + q.length > self.nbound:
            vec = (f.zero(),) * self.dim
        else:
            vec = self.path_nf(concat(q, p))
        self._products[key] = vec
        return vec

    def unit_vector(self):
        f = self.field
        vec = [f.zero()] * self.dim
        for v in self.quiver.vertices:
            vec[self._bindex[trivial_path(v)]] = f.one()
        return tuple(vec)

    def idempotent_vector(self, v: str):
        f = self.field
        vec = [f.zero()] * self.dim
        vec[self._bindex[trivial_path(str(v))]] = f.one()
        return tuple(vec)

    def radical_indices(self):
        return [i for i, p in enumerate(self.basis) if p.length >= 1]

    def is_semisimple(self) -> bool:
        return not self.radical_indices()

    def opposite(self) -> "BQA":
        qop = make_quiver(self.quiver.vertices,
                          [(a.name, a.target, a.source) for a in self.quiver.arrows],
                          require_acyclic=False)
        rels = []
        for rel in self.relations:
            rels.append([(c, Path(p.target, p.source, tuple(reversed(p.arrows)))) for c, p in rel])
        return BQA(self.field, qop, rels, self.nbound, name=self.name + "^op")

    def __repr__(self):
        return f"BQA({self.name or 'algebra'}, dim={self.dim})"


def build_bqa(field: Field, quiver: Quiver, relations, nbound: int, name: str = "") -> BQA:
    return BQA(field, quiver, relations, nbound, name=name)


def path_algebra(field: Field, quiver: Quiver, name: str = "") -> BQA:
    """Hereditary path algebra of an acyclic quiver (no relations)."""
    if not quiver.acyclic:
        raise QuivhomError("path_algebra requires an acyclic quiver; use build_bqa with relations")
    longest = 0
    for v in quiver.vertices:
        for w in quiver.vertices:
            from .quiver import paths_between
            for p in paths_between(quiver, v, w):
                longest = max(longest, p.length)
    return BQA(field, quiver, [], longest + 1, name=name)


def ground_field_algebra(field: Field, name: str = "k") -> BQA:
    return BQA(field, make_quiver(["1"], []), [], 1, name=name)


# ---------------------------------------------------------------------------
# modules


@dataclass
class AlgMod:
    """Left module over a BQA, stored vertexwise."""

    algebra: BQA
    dims: dict
    mats: dict

    def __post_init__(self):
        q = self.algebra.quiver
        f = self.algebra.field
        self.dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        mats = {}
        for a in q.arrows:
            m = self.mats.get(a.name)
            if m is None:
                m = Mat.zeros(f, self.dims[a.target], self.dims[a.source])
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise DimensionMismatch(f"arrow {a.name}: matrix shape {m.rows}x{m.cols}")
            mats[a.name] = m
        self.mats = mats

    def dim_total(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dim_total() == 0

    def check_relations(self) -> bool:
        A = self.algebra
        for rel in A.relations:
            src = rel[0][1].source
            tgt = rel[0][1].target
            acc = Mat.zeros(A.field, self.dims[tgt], self.dims[src])
            for c, p in rel:
                acc = acc.add(eval_path(self, p).scale(c))
            if not acc.is_zero():
                return False
        # the truncation bound must also act as zero
        for p in _paths_up_to(A.quiver, A.nbound)[A.nbound]:
            if not eval_path(self, p).is_zero():
                return False
        return True


def eval_path(m: AlgMod, p: Path) -> Mat:
    f = m.algebra.field
    out = Mat.identity(f, m.dims[p.source])
    for a in p.arrows:
        out = m.mats[a].mul(out)
    return out


@dataclass
class ModMap:
    source: AlgMod
    target: AlgMod
    mats: dict

    def __post_init__(self):
        q = self.source.algebra.quiver
        f = self.source.algebra.field
        mats = {}
        for v in q.vertices:
            m = self.mats.get(v)
            if m is None:
                m = Mat.zeros(f, self.target.dims[v], self.source.dims[v])
            if (m.rows, m.cols) != (self.target.dims[v], self.source.dims[v]):
                raise DimensionMismatch(f"vertex {v}: map shape {m.rows}x{m.cols}")
            mats[v] = m
        self.mats = mats

    def is_valid(self) -> bool:
        s, t = self.source, self.target
        for a in s.algebra.quiver.arrows:
            lhs = self.mats[a.target].mul(s.mats[a.name])
            rhs = t.mats[a.name].mul(self.mats[a.source])
            if lhs != rhs:
                return False
        return True

    def compose(self, other: "ModMap") -> "ModMap":
        """self o other."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise AlgebraMismatch("composition shape mismatch")
        return ModMap(other.source, self.target,
                      {v: self.mats[v].mul(other.mats[v]) for v in self.mats})

    def add(self, other: "ModMap") -> "ModMap":
        return ModMap(self.source, self.target,
                      {v: self.mats[v].add(other.mats[v]) for v in self.mats})

    def scale(self, c) -> "ModMap":
        return ModMap(self.source, self.target, {v: m.scale(c) for v, m in self.mats.items()})

    def flatten(self):
        out = []
        for v in self.source.algebra.quiver.vertices:
            out.extend(self.mats[v].entries)
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


def identity_map(m: AlgMod) -> ModMap:
    f = m.algebra.field
    return ModMap(m, m, {v: Mat.identity(f, d) for v, d in m.dims.items()})


def zero_map(src: AlgMod, dst: AlgMod) -> ModMap:
    return ModMap(src, dst, {})


def zero_module(a: BQA) -> AlgMod:
    return AlgMod(a, {}, {})


def direct_sum_mods(a: BQA, mods):
    """Direct sum with injection and projection maps."""
    mods = list(mods)
    f = a.field
    dims = {v: sum(m.dims[v] for m in mods) for v in a.quiver.vertices}
    mats = {}
    for arr in a.quiver.arrows:
        mats[arr.name] = Mat.block_diag(f, [m.mats[arr.name] for m in mods]) if mods else Mat.zeros(f, 0, 0)
    total = AlgMod(a, dims, mats)
    injs, projs = [], []
    for i, m in enumerate(mods):
        imats, pmats = {}, {}
        for v in a.quiver.vertices:
            before = sum(mods[j].dims[v] for j in range(i))
            rows = []
            for r in range(m.dims[v]):
                row = [f.zero()] * dims[v]
                row[before + r] = f.one()
                rows.append(row)
            pm = Mat.from_rows(f, rows) if rows else Mat.zeros(f, 0, dims[v])
            pmats[v] = pm  # projection from total onto summand... built below
            imats[v] = pm.transpose()
        injs.append(ModMap(m, total, imats))
        projs.append(ModMap(total, m, pmats))
    return total, injs, projs


def hom_basis(m: AlgMod, n: AlgMod):
    """Basis of Hom over the common algebra, as a list of ModMaps."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules over different algebras")
    a = m.algebra
    f = a.field
    verts = a.quiver.vertices
    offs = {}
    total = 0
    for v in verts:
        offs[v] = total
        total += n.dims[v] * m.dims[v]
    rows = []
    for arr in a.quiver.arrows:
        u, w = arr.source, arr.target
        ma, na = m.mats[arr.name], n.mats[arr.name]
        for i in range(n.dims[w]):
            for j in range(m.dims[u]):
                row = [f.zero()] * total
                # (phi_w . m_a)[i,j]
                for k in range(m.dims[w]):
                    c = ma.at(k, j)
                    if c != f.zero():
                        row[offs[w] + i * m.dims[w] + k] = f.add(row[offs[w] + i * m.dims[w] + k], c)
                # -(n_a . phi_u)[i,j]
                for l in range(n.dims[u]):
                    c = na.at(i, l)
                    if c != f.zero():
                        idx = offs[u] + l * m.dims[u] + j
                        row[idx] = f.sub(row[idx], c)
                if any(x != f.zero() for x in row):
                    rows.append(row)
    if total == 0:
        return []
    if rows:
        ker = kernel_basis(Mat.from_rows(f, rows))
    else:
        ker = [Mat.column(f, [1 if i == j else 0 for i in range(total)]) for j in range(total)]
    out = []
    for kvec in ker:
        flat = kvec.column_vector()
        mats = {}
        for v in verts:
            ent = flat[offs[v]:offs[v] + n.dims[v] * m.dims[v]]
            mats[v] = Mat(f, n.dims[v], m.dims[v], tuple(ent))
        out.append(ModMap(m, n, mats))
    return out


def hom_dim(m: AlgMod, n: AlgMod) -> int:
    return len(hom_basis(m, n))


# -- distinguished modules ---------------------------------------------------

def simple_module(a: BQA, v: str) -> AlgMod:
    return AlgMod(a, {str(v): 1}, {})


def projective_module(a: BQA, v: str) -> AlgMod:
    """Indecomposable projective at v: basis paths leaving v."""
    v = str(v)
    plists = {w: [p for p in a._vertex_paths[v] if p.target == w] for w in a.quiver.vertices}
    dims = {w: len(plists[w]) for w in a.quiver.vertices}
    f = a.field
    mats = {}
    for arr in a.quiver.arrows:
        src_list = plists[arr.source]
        dst_list = plists[arr.target]
        dst_index = {p: i for i, p in enumerate(dst_list)}
        cols = []
        for p in src_list:
            vec = a.path_nf(concat(p, arrow_path(arr))) if p.length + 1 <= a.nbound else None
            col = [f.zero()] * len(dst_list)
            if vec is not None:
                for q, bi in a._bindex.items():
                    c = vec[bi]
                    if c != f.zero():
                        col[dst_index[q]] = c
            cols.append(col)
        mats[arr.name] = Mat.from_rows(f, [[cols[j][i] for j in range(len(src_list))]
                                           for i in range(len(dst_list))]) \
            if dst_list else Mat.zeros(f, 0, len(src_list))
    mod = AlgMod(a, dims, mats)
    mod._proj_vertex = v
    mod._proj_paths = plists
    return mod


def map_from_projective(p: AlgMod, target: AlgMod, gen_image: Mat) -> ModMap:
    """Unique module map P_v -> target sending the generator e_v to gen_image."""
    a = p.algebra
    v = p._proj_vertex
    if gen_image.cols != 1 or gen_image.rows != target.dims[v]:
        raise DimensionMismatch("generator image must be a column at the generating vertex")
    f = a.field
    mats = {}
    for w in a.quiver.vertices:
        cols = [eval_path(target, q).mul(gen_image) for q in p._proj_paths[w]]
        if cols:
            mats[w] = Mat.hstack(f, cols)
        else:
            mats[w] = Mat.zeros(f, target.dims[w], 0)
    return ModMap(p, target, mats)


def injective_indecomposables(a: BQA):
    """One injective per vertex, dual of the opposite projective."""
    aop = a.opposite()
    out = []
    for v in a.quiver.vertices:
        pop = projective_module(aop, v)
        dims = {w: pop.dims[w] for w in a.quiver.vertices}
        mats = {}
        for arr in a.quiver.arrows:
            # arr in Q is reversed in Q^op; dualizing transposes its action
            mats[arr.name] = pop.mats[arr.name].transpose()
        out.append(AlgMod(a, dims, mats))
    return out


# -- submodule machinery ------------------------------------------------------

def column_space(field: Field, mats):
    """Basis matrix (columns) of the joint column space of the given matrices."""
    cols = []
    rows = None
    for m in mats:
        rows = m.rows
        for j in range(m.cols):
            cols.append([m.at(i, j) for i in range(m.rows)])
    if rows is None or not cols:
        return Mat.zeros(field, rows or 0, 0)
    basis = row_space(field, cols)
    return basis.transpose()


def row_space(field: Field, rows):
    m = Mat.from_rows(field, rows)
    red, rk, _ = rref(m)
    keep = red.row_list()[:rk]
    if not keep:
        return Mat.zeros(field, 0, m.cols)
    return Mat.from_rows(field, keep)


def complement_projection(field: Field, basis_cols: Mat):
    """For a full-column-rank B inside k^n, build (proj, sect) with
    proj*B = 0, proj*sect = id on the quotient coordinates."""
    n = basis_cols.rows
    r = basis_cols.cols
    if r == 0:
        return Mat.identity(field, n), Mat.identity(field, n)
    full = Mat.hstack(field, [basis_cols, Mat.identity(field, n)])
    _, _, pivots = rref(full)
    chosen = [c - r for c in pivots if c >= r][:n - r]
    t_cols = [basis_cols.col(j) for j in range(r)]
    for j in chosen:
        e = [field.zero()] * n
        e[j] = field.one()
        t_cols.append(Mat.column(field, e))
    t = Mat.hstack(field, t_cols)
    tinv = solve_matrix(t, Mat.identity(field, n))
    proj_rows = tinv.row_list()[r:]
    proj = Mat.from_rows(field, proj_rows) if proj_rows else Mat.zeros(field, 0, n)
    sect = Mat.hstack(field, t_cols[r:]) if chosen else Mat.zeros(field, n, 0)
    return proj, sect


def radical_submodule(m: AlgMod):
    """Inclusion matrices of rad M = sum of arrow images, per vertex."""
    a = m.algebra
    incl = {}
    for v in a.quiver.vertices:
        images = [m.mats[arr.name] for arr in a.quiver.arrows_into(v)]
        incl[v] = column_space(a.field, images) if images else Mat.zeros(a.field, m.dims[v], 0)
    return incl


def kernel_of(f: ModMap):
    """Kernel submodule with its inclusion map."""
    a = f.source.algebra
    fl = a.field
    kbases = {}
    for v in a.quiver.vertices:
        kb = kernel_basis(f.mats[v])
        kbases[v] = Mat.hstack(fl, kb) if kb else Mat.zeros(fl, f.source.dims[v], 0)
    dims = {v: kbases[v].cols for v in a.quiver.vertices}
    mats = {}
    for arr in a.quiver.arrows:
        moved = f.source.mats[arr.name].mul(kbases[arr.source])
        x = solve_matrix(kbases[arr.target], moved)
        if x is None:
            raise QuivhomError("kernel is not arrow-stable; invalid module map")
        mats[arr.name] = x
    k = AlgMod(a, dims, mats)
    incl = ModMap(k, f.source, kbases)
    return k, incl


def quotient_module(m: AlgMod, incl: dict):
    """Quotient of m by the submodule spanned by per-vertex inclusion matrices."""
    a = m.algebra
    f = a.field
    projs, sects = {}, {}
    for v in a.quiver.vertices:
        basis = column_space(f, [incl[v]]) if incl[v].cols else Mat.zeros(f, m.dims[v], 0)
        p, s = complement_projection(f, basis)
        projs[v], sects[v] = p, s
    dims = {v: projs[v].rows for v in a.quiver.vertices}
    mats = {}
    for arr in a.quiver.arrows:
        mats[arr.name] = projs[arr.target].mul(m.mats[arr.name]).mul(sects[arr.source])
    qm = AlgMod(a, dims, mats)
    qmap = ModMap(m, qm, projs)
    return qm, qmap, sects


def projective_cover(m: AlgMod):
    """Minimal projective cover (P, pi)."""
    a = m.algebra
    f = a.field
    rad = radical_submodule(m)
    pieces = []
    maps = []
    for v in a.quiver.vertices:
        proj, sect = complement_projection(f, rad[v])
        for j in range(sect.cols):
            pv = projective_module(a, v)
            pieces.append(pv)
            maps.append(map_from_projective(pv, m, sect.col(j)))
    if not pieces:
        z = zero_module(a)
        return z, zero_map(z, m)
    total, injs, projs = direct_sum_mods(a, pieces)
    mats = {}
    for v in a.quiver.vertices:
        cols = [mp.mats[v] for mp in maps]
        mats[v] = Mat.hstack(f, cols) if cols else Mat.zeros(f, m.dims[v], 0)
    pi = ModMap(total, m, mats)
    return total, pi


def is_surjective(f: ModMap) -> bool:
    return all(rank(f.mats[v]) == f.target.dims[v] for v in f.mats)


def cover_is_minimal(p: AlgMod, pi: ModMap) -> bool:
    """ker pi contained in rad P, checked by column-space ranks."""
    a = p.algebra
    rad = radical_submodule(p)
    k, incl = kernel_of(pi)
    for v in a.quiver.vertices:
        if incl.mats[v].cols == 0:
            continue
        joint = Mat.hstack(a.field, [rad[v], incl.mats[v]])
        if rank(joint) != rank(rad[v]):
            return False
    return True


def is_projective(m: AlgMod) -> bool:
    if m.is_zero():
        return True
    _, pi = projective_cover(m)
    k, _ = kernel_of(pi)
    return k.is_zero()


def syzygy(m: AlgMod):
    _, pi = projective_cover(m)
    k, _ = kernel_of(pi)
    return k


def pd(m: AlgMod, cap: int = 20) -> Dim:
    """Projective dimension by minimal syzygy iteration, capped."""
    current = m
    for i in range(cap + 1):
        if is_projective(current):
            return Dim.finite(i)
        current = syzygy(current)
    return Dim.at_least(cap)


def gldim(a: BQA, cap: int = 20) -> Dim:
    return dim_max(pd(simple_module(a, v), cap) for v in a.quiver.vertices)


def minimal_resolution(m: AlgMod, length: int):
    """[(P_0, d_0), (P_1, d_1), ...] with d_0: P_0 -> M, d_i: P_i -> P_{i-1}."""
    out = []
    current = m
    for _ in range(length + 1):
        p, pi = projective_cover(current)
        if out:
            prev_incl = out[-1][2]
            d = prev_incl.compose(pi)
        else:
            d = pi
        k, incl = kernel_of(pi)
        out.append((p, d, incl))
        current = k
        if k.is_zero():
            break
    return [(p, d) for p, d, _ in out]


def ext_dims(m: AlgMod, s: AlgMod, upto: int):
    """dim Ext^i(M, S) for 0 <= i <= upto, from Hom(P_., S) cochain ranks."""
    res = minimal_resolution(m, upto + 1)
    a = m.algebra
    f = a.field
    homs = [hom_basis(res[i][0], s) if i < len(res) else [] for i in range(upto + 2)]
    deltas = []
    for i in range(upto + 1):
        # delta_i : Hom(P_i, S) -> Hom(P_{i+1}, S),  b -> b o d_{i+1}
        if i + 1 < len(res) and homs[i]:
            d = res[i + 1][1]
            basis_next = homs[i + 1]
            flat_next = Mat.hstack(f, [Mat.column(f, b.flatten()) for b in basis_next]) \
                if basis_next else None
            cols = []
            for b in homs[i]:
                flat = Mat.column(f, b.compose(d).flatten())
                if flat_next is not None:
                    x = solve_matrix(flat_next, flat)
                    if x is None:
                        raise CompositionInconsistent("hom basis does not span the composite")
                    cols.append(x)
                else:
                    if not flat.is_zero():
                        raise CompositionInconsistent("nonzero composite with empty hom space")
                    cols.append(Mat.zeros(f, 0, 1))
            dmat = Mat.hstack(f, cols) if cols else Mat.zeros(f, len(homs[i + 1]), 0)
        else:
            dmat = Mat.zeros(f, len(homs[i + 1]), len(homs[i]))
        deltas.append(dmat)
    out = []
    for i in range(upto + 1):
        h = len(homs[i])
        r_out = rank(deltas[i])
        r_in = rank(deltas[i - 1]) if i >= 1 else 0
        out.append(h - r_out - r_in)
    return out


def pd_via_ext(m: AlgMod, cap: int = 20) -> Dim:
    """Independent oracle: pd = max { i : Ext^i(M, S) != 0 for some simple }."""
    if m.is_zero():
        return Dim.finite(0)
    a = m.algebra
    res = minimal_resolution(m, cap + 1)
    if len(res) > cap + 1 or not _resolution_terminates(m, res):
        return Dim.at_least(cap)
    best = 0
    for v in a.quiver.vertices:
        s = simple_module(a, v)
        exts = ext_dims(m, s, min(cap, len(res)))
        for i, e in enumerate(exts):
            if e != 0:
                best = max(best, i)
    return Dim.finite(best)


def _resolution_terminates(m: AlgMod, res) -> bool:
    # terminated iff the last cover had a zero kernel
    current = m
    for _ in res:
        k = syzygy(current)
        current = k
        if k.is_zero():
            return True
    return False


# ---------------------------------------------------------------------------
# structure-constant algebras


class SCAlgebra:
    """Associative algebra given by structure constants on an explicit basis."""

    def __init__(self, field: Field, mult, unit, idempotents=None, radical=None,
                 labels=None, check: bool = False):
        self.field = field
        self.mult = tuple(tuple(tuple(v) for v in row) for row in mult)
        self.dim = len(self.mult)
        self.unit = tuple(unit)
        self.idempotents = tuple(tuple(e) for e in idempotents) if idempotents is not None else None
        self.known_radical = tuple(tuple(r) for r in radical) if radical is not None else None
        self.labels = tuple(labels) if labels is not None else None
        if check:
            self.validate()

    def multiply(self, x, y):
        f = self.field
        out = [f.zero()] * self.dim
        for i, xi in enumerate(x):
            if xi == f.zero():
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if yj == f.zero():
                    continue
                c = f.mul(xi, yj)
                for k, m in enumerate(row[j]):
                    if m != f.zero():
                        out[k] = f.add(out[k], f.mul(c, m))
        return tuple(out)

    def left_mult_matrix(self, x) -> Mat:
        f = self.field
        cols = []
        for j in range(self.dim):
            ej = [f.zero()] * self.dim
            ej[j] = f.one()
            cols.append(Mat.column(f, list(self.multiply(x, ej))))
        return Mat.hstack(f, cols) if cols else Mat.zeros(f, 0, 0)

    def validate(self):
        f = self.field
        unit = self.unit
        basis = [tuple(f.one() if i == j else f.zero() for i in range(self.dim)) for j in range(self.dim)]
        for b in basis:
            if self.multiply(unit, b) != b or self.multiply(b, unit) != b:
                raise CompositionInconsistent("unit axiom fails")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mult[i][j]
                if all(c == f.zero() for c in ij):
                    left = None
                else:
                    left = ij
                for k in range(self.dim):
                    lhs = self.multiply(left, basis[k]) if left is not None else None
                    rhs_inner = self.mult[j][k]
                    rhs = self.multiply(basis[i], rhs_inner)
                    if lhs is None:
                        lhs = tuple(f.zero() for _ in range(self.dim))
                    if lhs != rhs:
                        raise CompositionInconsistent(f"associativity fails at basis triple ({i},{j},{k})")
        if self.idempotents is not None:
            total = [f.zero()] * self.dim
            for a, e in enumerate(self.idempotents):
                if self.multiply(e, e) != tuple(e):
                    raise CompositionInconsistent("idempotent axiom fails")
                for b, e2 in enumerate(self.idempotents):
                    if a != b:
                        prod = self.multiply(e, e2)
                        if any(c != f.zero() for c in prod):
                            raise CompositionInconsistent("idempotents not orthogonal")
                total = [f.add(x, y) for x, y in zip(total, e)]
            if tuple(total) != self.unit:
                raise CompositionInconsistent("idempotents do not sum to the unit")

    def __repr__(self):
        return f"SCAlgebra(dim={self.dim})"


def sc_of_bqa(a: BQA) -> SCAlgebra:
    """Structure-constant view of a bound quiver algebra."""
    f = a.field
    mult = [[a.product(i, j) for j in range(a.dim)] for i in range(a.dim)]
    idems = [a.idempotent_vector(v) for v in a.quiver.vertices]
    rad = []
    for i in a.radical_indices():
        vec = [f.zero()] * a.dim
        vec[i] = f.one()
        rad.append(tuple(vec))
    labels = [str(p) for p in a.basis]
    return SCAlgebra(f, mult, a.unit_vector(), idempotents=idems, radical=rad, labels=labels)


def radical_sc(sc: SCAlgebra):
    """Jacobson radical via the trace form of the regular representation (char 0)."""
    if sc.field.kind != "q":
        raise CharPNotSupported("trace-form radical requires characteristic zero")
    f = sc.field
    n = sc.dim
    # T[i][j] = trace(L_i L_j) = sum_{l,k} mult[i][l][k] * mult[j][k][l]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = f.zero()
            for l in range(n):
                mi = sc.mult[i][l]
                for k in range(n):
                    c = mi[k]
                    if c != f.zero():
                        d = sc.mult[j][k][l]
                        if d != f.zero():
                            acc = f.add(acc, f.mul(c, d))
            row.append(acc)
        rows.append(row)
    t = Mat.from_rows(f, rows) if n else Mat.zeros(f, 0, 0)
    ker = kernel_basis(t)
    rad = [tuple(v.column_vector()) for v in ker]
    if rank(t) != n - len(rad):
        raise CompositionInconsistent("trace form rank inconsistent with its kernel")
    # verify nilpotency of the computed radical
    layer = list(rad)
    steps = 0
    while layer and steps <= n + 1:
        nxt = []
        for x in layer:
            for y in rad:
                p = sc.multiply(x, y)
                if any(c != f.zero() for c in p):
                    nxt.append(p)
        if not nxt:
            break
        basis_rows = row_space(f, nxt)
        layer = [tuple(r) for r in basis_rows.row_list()]
        steps += 1
    else:
        if layer:
            raise CompositionInconsistent("trace-form kernel is not nilpotent")
    return rad
