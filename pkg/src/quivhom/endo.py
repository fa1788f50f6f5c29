"""Endomorphism algebras of explicit module lists, as structure-constant algebras.

The summands may be base-algebra modules or quiver representations; a small
category adapter hides the difference.  Products compose in the usual order
(f * g = f o g), so Hom(U, W) is a left End(W)-module by post-composition.
The explicit isomorphism End(sum_v e^v_lambda(A)) = (End A)Q is constructed
from the adjunction: the morphism attached to a path p: w ~> v and an
endomorphism gamma sends the copy at q to the copy at concat(p, q) via gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as alg
from . import repcat as rc
from .algebra import SCAlgebra
from .bounds import Dim
from .errors import CompositionInconsistent, IsoCheckFailed, NotGenCogen, QuivhomError
from .exactlin import Mat, rank, solve_matrix
from .quiver import Quiver, concat, is_type_An, paths_between, sinks, trivial_path
from .scmodule import ColumnData, SCModule, gldim_sc, pd_sc, projective_cover_sc, _solve_section


@dataclass
class Category:
    """Uniform access to a module-like category."""

    field: object
    hom_basis: object
    compose: object
    identity: object
    zero_map: object
    add: object
    scale: object
    flatten: object
    is_zero_obj: object


def module_category(a) -> Category:
    return Category(
        field=a.field,
        hom_basis=alg.hom_basis,
        compose=lambda f, g: f.compose(g),
        identity=alg.identity_map,
        zero_map=alg.zero_map,
        add=lambda f, g: f.add(g),
        scale=lambda f, c: f.scale(c),
        flatten=lambda f: f.flatten(),
        is_zero_obj=lambda m: m.is_zero(),
    )


def rep_category(q, a) -> Category:
    return Category(
        field=a.field,
        hom_basis=rc.rep_hom_basis,
        compose=lambda f, g: f.compose(g),
        identity=rc.identity_repmap,
        zero_map=rc.zero_repmap,
        add=lambda f, g: f.add(g),
        scale=lambda f, c: f.scale(c),
        flatten=lambda f: f.flatten(),
        is_zero_obj=lambda m: m.is_zero(),
    )


@dataclass
class EndAlgebra:
    sc: SCAlgebra
    summands: list
    cat: Category
    blocks: dict      # (src, dst) -> (offset, [basis maps])
    labels: list

    @property
    def dim(self):
        return self.sc.dim


def end_algebra(summands, cat: Category, check: bool = True) -> EndAlgebra:
    """End(sum of summands) with structure constants from exact re-expression."""
    summands = list(summands)
    n = len(summands)
    f = cat.field
    blocks = {}
    labels = []
    offset = 0
    for i in range(n):
        for j in range(n):
            basis = cat.hom_basis(summands[i], summands[j])
            blocks[(i, j)] = (offset, basis)
            for t in range(len(basis)):
                labels.append((i, j, t))
            offset += len(basis)
    dim = offset
    # stacked flats per block for exact re-expression
    stacked = {}
    for (i, j), (off, basis) in blocks.items():
        if basis:
            stacked[(i, j)] = Mat.hstack(f, [Mat.column(f, cat.flatten(b)) for b in basis])
    zero_vec = tuple(f.zero() for _ in range(dim))
    mult = [[zero_vec for _ in range(dim)] for _ in range(dim)]
    for (c, d), (off_g, basis_g) in blocks.items():
        for (a, b), (off_f, basis_f) in blocks.items():
            if d != a:
                continue
            target = blocks[(c, b)]
            for gi, g in enumerate(basis_g):
                for fi, fmap in enumerate(basis_f):
                    comp = cat.compose(fmap, g)
                    flat = Mat.column(f, cat.flatten(comp))
                    vec = [f.zero()] * dim
                    if flat.is_zero():
                        pass
                    elif target[1]:
                        x = solve_matrix(stacked[(c, b)], flat)
                        if x is None:
                            raise CompositionInconsistent("composite escapes its hom block")
                        for t, cval in enumerate(x.column_vector()):
                            vec[target[0] + t] = cval
                    else:
                        raise CompositionInconsistent("nonzero composite in a zero hom block")
                    mult[off_f + fi][off_g + gi] = tuple(vec)
    unit = [f.zero()] * dim
    idems = []
    for i in range(n):
        off, basis = blocks[(i, i)]
        ident = cat.identity(summands[i])
        flat = Mat.column(f, cat.flatten(ident))
        e_vec = [f.zero()] * dim
        if basis:
            x = solve_matrix(stacked[(i, i)], flat)
            if x is None:
                raise CompositionInconsistent("identity not in its own hom block")
            for t, cval in enumerate(x.column_vector()):
                e_vec[off + t] = cval
                unit[off + t] = f.add(unit[off + t], cval)
        elif not flat.is_zero():
            raise CompositionInconsistent("identity of a nonzero summand has empty hom block")
        idems.append(tuple(e_vec))
    sc = SCAlgebra(f, mult, tuple(unit), idempotents=idems, labels=labels, check=check)
    return EndAlgebra(sc, summands, cat, blocks, labels)


def sc_gldim(e, cap: int = 20) -> Dim:
    sc = e.sc if isinstance(e, EndAlgebra) else e
    return gldim_sc(sc, cap)


def hom_as_end_module(from_summands, to_summands, cat: Category,
                      end_alg: EndAlgebra = None) -> SCModule:
    """Hom(sum from, sum to) as a left End(to)-module via post-composition."""
    if end_alg is None:
        end_alg = end_algebra(to_summands, cat)
    f = cat.field
    from_summands = list(from_summands)
    to_summands = list(to_summands)
    hblocks = {}
    offset = 0
    for i in range(len(from_summands)):
        for j in range(len(to_summands)):
            basis = cat.hom_basis(from_summands[i], to_summands[j])
            hblocks[(i, j)] = (offset, basis)
            offset += len(basis)
    dim = offset
    stacked = {}
    for (i, j), (off, basis) in hblocks.items():
        if basis:
            stacked[(i, j)] = Mat.hstack(f, [Mat.column(f, cat.flatten(b)) for b in basis])
    action = []
    for t in range(end_alg.dim):
        a_src, a_dst, a_idx = end_alg.labels[t]
        gamma = end_alg.blocks[(a_src, a_dst)][1][a_idx]
        cols = []
        for (i, j), (off, basis) in sorted(hblocks.items(), key=lambda kv: kv[1][0]):
            for h in basis:
                vec = [f.zero()] * dim
                if j == a_src:
                    comp = cat.compose(gamma, h)
                    flat = Mat.column(f, cat.flatten(comp))
                    toff, tbasis = hblocks[(i, a_dst)]
                    if not flat.is_zero():
                        if not tbasis:
                            raise CompositionInconsistent("post-composite escapes hom blocks")
                        x = solve_matrix(stacked[(i, a_dst)], flat)
                        if x is None:
                            raise CompositionInconsistent("post-composite escapes hom blocks")
                        for s, cval in enumerate(x.column_vector()):
                            vec[toff + s] = cval
                cols.append(Mat.column(f, vec))
        action.append(Mat.hstack(f, cols) if cols else Mat.zeros(f, 0, 0))
    return SCModule(end_alg.sc, dim, action)


def hom_bimodule(from_end: EndAlgebra, to_end: EndAlgebra, cat: Category):
    """Hom(sum from, sum to) as an End(to)-End(from)-bimodule (post/pre-composition).

    Returns (dim, left action matrices, right action matrices), indexed by the
    same hom-block basis as :func:`hom_as_end_module`.
    """
    f = cat.field
    from_summands = list(from_end.summands)
    to_summands = list(to_end.summands)
    hblocks = {}
    offset = 0
    for i in range(len(from_summands)):
        for j in range(len(to_summands)):
            basis = cat.hom_basis(from_summands[i], to_summands[j])
            hblocks[(i, j)] = (offset, basis)
            offset += len(basis)
    dim = offset
    stacked = {}
    for (i, j), (off, basis) in hblocks.items():
        if basis:
            stacked[(i, j)] = Mat.hstack(f, [Mat.column(f, cat.flatten(b)) for b in basis])

    def express(i, j, comp):
        flat = Mat.column(f, cat.flatten(comp))
        vec = [f.zero()] * dim
        if flat.is_zero():
            return vec
        toff, tbasis = hblocks[(i, j)]
        x = solve_matrix(stacked[(i, j)], flat) if tbasis else None
        if x is None:
            raise CompositionInconsistent("composite escapes hom blocks")
        for s, cval in enumerate(x.column_vector()):
            vec[toff + s] = cval
        return vec

    ordered = sorted(hblocks.items(), key=lambda kv: kv[1][0])
    left = []
    for t in range(to_end.dim):
        a_src, a_dst, a_idx = to_end.labels[t]
        gamma = to_end.blocks[(a_src, a_dst)][1][a_idx]
        cols = []
        for (i, j), (off, basis) in ordered:
            for h in basis:
                if j == a_src:
                    cols.append(Mat.column(f, express(i, a_dst, cat.compose(gamma, h))))
                else:
                    cols.append(Mat.column(f, [f.zero()] * dim))
        left.append(Mat.hstack(f, cols) if cols else Mat.zeros(f, 0, 0))
    right = []
    for t in range(from_end.dim):
        a_src, a_dst, a_idx = from_end.labels[t]
        gamma = from_end.blocks[(a_src, a_dst)][1][a_idx]
        cols = []
        for (i, j), (off, basis) in ordered:
            for h in basis:
                if i == a_dst:
                    cols.append(Mat.column(f, express(a_src, j, cat.compose(h, gamma))))
                else:
                    cols.append(Mat.column(f, [f.zero()] * dim))
        right.append(Mat.hstack(f, cols) if cols else Mat.zeros(f, 0, 0))
    return dim, left, right


def is_projective_endmodule(n: SCModule, coldata: ColumnData = None) -> bool:
    """Cover from top(N), then a linear solve for a module-map right inverse."""
    if n.is_zero():
        return True
    cd = coldata if coldata is not None else ColumnData(n.sc)
    cover, pi = projective_cover_sc(n, cd)
    return _solve_section(pi) is not None


def pd_endmodule(n: SCModule, cap: int = 20, coldata: ColumnData = None) -> Dim:
    return pd_sc(n, cap, coldata if coldata is not None else ColumnData(n.sc))


def validate_summands(summands, cat: Category):
    """Nonzero check always; local-endomorphism check over the rationals."""
    for i, s in enumerate(summands):
        if cat.is_zero_obj(s):
            raise QuivhomError(f"summand {i} is zero")
    if cat.field.kind == "q":
        for i, s in enumerate(summands):
            e = end_algebra([s], cat, check=False)
            rad = alg.radical_sc(e.sc)
            if e.dim - len(rad) != 1:
                raise QuivhomError(f"summand {i} is not indecomposable (End corank {e.dim - len(rad)})")


# -- path-block algebra and the End iso -----------------------------------------------

def path_block_algebra(gamma: SCAlgebra, q: Quiver) -> tuple:
    """(End A)Q with basis (path, gamma-basis element).

    Product ((d, r) * (g, p)) = (d * g, r then p), nonzero when r ends where
    p starts; this matches composition of the attached morphisms.
    """
    f = gamma.field
    paths = []
    for v in q.vertices:
        for w in q.vertices:
            paths.extend(paths_between(q, v, w))
    index = {}
    labels = []
    for pi, p in enumerate(paths):
        for g in range(gamma.dim):
            index[(pi, g)] = len(labels)
            labels.append((p, g))
    dim = len(labels)
    zero_vec = tuple(f.zero() for _ in range(dim))
    mult = [[zero_vec for _ in range(dim)] for _ in range(dim)]
    path_index = {p: i for i, p in enumerate(paths)}
    for i, (r, d) in enumerate(labels):
        for j, (p, g) in enumerate(labels):
            if r.target != p.source:
                continue
            newp = concat(r, p)
            pi = path_index.get(newp)
            if pi is None:
                continue
            gv = gamma.mult[d][g]
            vec = [f.zero()] * dim
            for t, c in enumerate(gv):
                if c != f.zero():
                    vec[index[(pi, t)]] = c
            mult[i][j] = tuple(vec)
    unit = [f.zero()] * dim
    for v in q.vertices:
        pi = path_index[trivial_path(v)]
        for t, c in enumerate(gamma.unit):
            unit[index[(pi, t)]] = c
    sc = SCAlgebra(f, mult, tuple(unit), labels=[(str(p), g) for p, g in labels])
    return sc, labels


@dataclass
class EndIsoReport:
    lhs_dim: int
    rhs_dim: int
    verified: bool
    side: str
    details: dict


def adjoint_end_iso(q: Quiver, a, summands, side: str = "lambda",
                    vertices=None) -> EndIsoReport:
    """Explicit algebra isomorphism End(sum_v adjoint(A)) = (End A)Q'.

    ``summands`` decompose the base module A.  ``vertices`` restricts the sum
    to a vertex subset; the right-hand side is then the path algebra of the
    full subquiver on those vertices, while the adjoints still live over the
    ambient quiver.  (Used with the non-sink vertices, where ambient paths
    between kept vertices never leave the subset.)
    """
    cat = module_category(a)
    gamma_alg = end_algebra(summands, cat)
    total, _, _ = alg.direct_sum_mods(a, summands)
    if vertices is None:
        use_q = q
    else:
        from .quiver import subquiver
        use_q = subquiver(q, vertices)
    rhs, rhs_labels = path_block_algebra(gamma_alg.sc, use_q)
    # LHS pieces over the ambient quiver
    if side == "lambda":
        pieces = {v: rc.left_adjoint(q, v, total) for v in use_q.vertices}
    else:
        pieces = {v: rc.right_adjoint(q, v, total) for v in use_q.vertices}
    tot_rep, injs, projs = rc.rep_direct_sum(q, a, [pieces[v] for v in use_q.vertices])
    vindex = {v: i for i, v in enumerate(use_q.vertices)}
    f = a.field
    _, sinjs, sprojs = alg.direct_sum_mods(a, summands)

    def gamma_map(g_index):
        src, dst, t = gamma_alg.labels[g_index]
        base = gamma_alg.blocks[(src, dst)][1][t]
        return sinjs[dst].compose(base).compose(sprojs[src])

    chi_maps = []
    for p, g in rhs_labels:
        gm = gamma_map(g)
        v, w = p.target, p.source  # morphism e^v -> e^w for path p: w ~> v
        src_piece, dst_piece = pieces[v], pieces[w]
        comp = rc.zero_repmap(src_piece, dst_piece)
        for x in q.vertices:
            if side == "lambda":
                src_paths = src_piece._adjoint[3][x]   # paths v ~> x
                dst_idx = {pp: i for i, pp in enumerate(dst_piece._adjoint[3][x])}
                for i, qq in enumerate(src_paths):
                    j = dst_idx[concat(p, qq)]
                    term = dst_piece._adjoint[4][x][j].compose(
                        gm).compose(src_piece._adjoint[5][x][i])
                    comp.mats[x] = comp.mats[x].add(term)
            else:
                dst_paths = dst_piece._adjoint[3][x]   # paths x ~> w
                src_idx = {pp: i for i, pp in enumerate(src_piece._adjoint[3][x])}
                for j, rr in enumerate(dst_paths):
                    i = src_idx[concat(rr, p)]
                    term = dst_piece._adjoint[4][x][j].compose(
                        gm).compose(src_piece._adjoint[5][x][i])
                    comp.mats[x] = comp.mats[x].add(term)
        chi_maps.append(injs[vindex[w]].compose(comp).compose(projs[vindex[v]]))

    details = {}
    for chi in chi_maps:
        if not chi.is_valid():
            raise IsoCheckFailed("a correspondence morphism is not natural")
    flats = [Mat.column(f, chi.flatten()) for chi in chi_maps]
    stacked = Mat.hstack(f, flats) if flats else Mat.zeros(f, 0, 0)
    lhs_dim = rc.rep_hom_dim(tot_rep, tot_rep)
    rhs_dim = rhs.dim
    details["independent"] = (rank(stacked) == len(chi_maps)) if chi_maps else True
    details["dims_match"] = lhs_dim == rhs_dim
    if not (details["independent"] and details["dims_match"]):
        raise IsoCheckFailed(f"correspondence is not bijective: {details}")
    # structure constants agree
    ok = True
    for i, ci in enumerate(chi_maps):
        for j, cj in enumerate(chi_maps):
            comp = ci.compose(cj)
            flat = Mat.column(f, comp.flatten())
            coords = solve_matrix(stacked, flat)
            if coords is None:
                raise IsoCheckFailed("composite escapes the correspondence span")
            if tuple(coords.column_vector()) != rhs.mult[i][j]:
                ok = False
    details["structure_constants"] = ok
    if not ok:
        raise IsoCheckFailed("structure constants disagree under the correspondence")
    return EndIsoReport(lhs_dim, rhs_dim, True, side, details)


# -- Hom vanishing between sink injectives and non-sink projectives ---------------------

@dataclass
class VanishingReport:
    hypothesis_ok: bool
    pairs: list  # (sink v, non-sink w, dim)
    all_zero: bool


def sink_hom_vanishing(q: Quiver, a, module) -> VanishingReport:
    """dim Hom(e^v_rho(A), e^w_lambda(A)) for sinks v and non-sinks w."""
    hyp = not is_type_An(q)
    s = sinks(q)
    non = [v for v in q.vertices if v not in s]
    pairs = []
    for v in s:
        ev = rc.right_adjoint(q, v, module)
        for w in non:
            ew = rc.left_adjoint(q, w, module)
            pairs.append((v, w, rc.rep_hom_dim(ev, ew)))
    return VanishingReport(hyp, pairs, all(d == 0 for _, _, d in pairs))
