"""Uniform component-keyed access to the module-like categories.

Objects in every category split into vector-space components indexed by keys
(base vertices, vertex pairs, or the two slots of a triple), and morphisms are
key-preserving block matrices subject to structural equations.  The witness
calculus works generically over this interface: per-key rank checks decide
exactness, and raw (non-structural) block maps are allowed where certificates
only need linear identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as alg
from . import repcat as rc
from . import scmodule as scm
from . import trimat as tm
from .errors import QuivhomError
from .exactlin import Mat, solve_matrix


@dataclass
class Cat:
    name: str
    field: object
    keys: object            # obj -> ordered key list
    comp_dim: object        # (obj, key) -> int
    zero_obj: object        # () -> obj
    direct_sum: object      # [objs] -> (obj, injs, projs)
    identity: object
    zero_map: object
    compose: object
    add_map: object
    scale_map: object
    map_mats: object        # morphism -> {key: Mat}
    map_from_mats: object   # (src, dst, {key: Mat}) -> morphism (unchecked)
    is_morphism: object
    hom_basis: object
    kernel: object          # morphism -> (obj, incl morphism)
    quotient: object        # (obj, {key: columns}) -> (obj, proj morphism)
    obj_equal: object
    is_zero_obj: object
    is_semisimple_base: object

    def total_dim(self, obj):
        return sum(self.comp_dim(obj, k) for k in self.keys(obj))

    def flatten_map(self, f):
        mats = self.map_mats(f)
        out = []
        for k in sorted(mats.keys(), key=str):
            out.extend(mats[k].entries)
        return out

    def total_matrix(self, f, src, dst):
        """Block-diagonal total matrix in the canonical key order."""
        mats = self.map_mats(f)
        ks = self.keys(src)
        return Mat.block_diag(self.field, [mats[k] for k in ks]) if ks \
            else Mat.zeros(self.field, 0, 0)


# -- base-algebra modules -------------------------------------------------------------

def mod_cat(a) -> Cat:
    def quotient(obj, cols):
        qm, qmap, _ = alg.quotient_module(obj, cols)
        return qm, qmap

    return Cat(
        name=f"mod({a.name or 'algebra'})",
        field=a.field,
        keys=lambda m: list(a.quiver.vertices),
        comp_dim=lambda m, k: m.dims[k],
        zero_obj=lambda: alg.zero_module(a),
        direct_sum=lambda ms: alg.direct_sum_mods(a, ms),
        identity=alg.identity_map,
        zero_map=alg.zero_map,
        compose=lambda f, g: f.compose(g),
        add_map=lambda f, g: f.add(g),
        scale_map=lambda f, c: f.scale(c),
        map_mats=lambda f: dict(f.mats),
        map_from_mats=lambda s, d, mats: alg.ModMap(s, d, dict(mats)),
        is_morphism=lambda f: f.is_valid(),
        hom_basis=alg.hom_basis,
        kernel=alg.kernel_of,
        quotient=quotient,
        obj_equal=lambda x, y: x.dims == y.dims and x.mats == y.mats,
        is_zero_obj=lambda m: m.is_zero(),
        is_semisimple_base=lambda: a.is_semisimple(),
    )


# -- representations ------------------------------------------------------------------

def rep_cat(q, a) -> Cat:
    def keys(x):
        return [(v, u) for v in q.vertices for u in a.quiver.vertices]

    def map_mats(f):
        return {(v, u): f.mats[v].mats[u] for v in q.vertices for u in a.quiver.vertices}

    def map_from_mats(s, d, mats):
        per_vertex = {}
        for v in q.vertices:
            per_vertex[v] = alg.ModMap(s.mods[v], d.mods[v],
                                       {u: mats[(v, u)] for u in a.quiver.vertices})
        return rc.RepMap(s, d, per_vertex)

    def quotient(obj, cols):
        # columns keyed by (v, u); quotient per vertex then induced arrow maps
        mods, projs, sects = {}, {}, {}
        for v in q.vertices:
            incl = {u: cols[(v, u)] for u in a.quiver.vertices}
            qm, qmap, sect = alg.quotient_module(obj.mods[v], incl)
            mods[v], projs[v], sects[v] = qm, qmap, sect
        maps = {}
        for arr in q.arrows:
            comp = projs[arr.target].compose(obj.maps[arr.name])
            mats = {u: comp.mats[u].mul(sects[arr.source][u]) for u in a.quiver.vertices}
            maps[arr.name] = alg.ModMap(mods[arr.source], mods[arr.target], mats)
        qr = rc.Rep(q, a, mods, maps)
        return qr, rc.RepMap(obj, qr, projs)

    def obj_equal(x, y):
        for v in q.vertices:
            if x.mods[v].dims != y.mods[v].dims or x.mods[v].mats != y.mods[v].mats:
                return False
            if x.maps.keys() != y.maps.keys():
                return False
        for name in x.maps:
            if x.maps[name].mats != y.maps[name].mats:
                return False
        return True

    return Cat(
        name="rep",
        field=a.field,
        keys=keys,
        comp_dim=lambda x, k: x.mods[k[0]].dims[k[1]],
        zero_obj=lambda: rc.rep_zero(q, a),
        direct_sum=lambda xs: rc.rep_direct_sum(q, a, xs),
        identity=rc.identity_repmap,
        zero_map=rc.zero_repmap,
        compose=lambda f, g: f.compose(g),
        add_map=lambda f, g: f.add(g),
        scale_map=lambda f, c: f.scale(c),
        map_mats=map_mats,
        map_from_mats=map_from_mats,
        is_morphism=lambda f: f.is_valid(),
        hom_basis=rc.rep_hom_basis,
        kernel=rc.rep_kernel,
        quotient=quotient,
        obj_equal=obj_equal,
        is_zero_obj=lambda x: x.is_zero(),
        is_semisimple_base=lambda: a.is_semisimple(),
    )


# -- raw structure-constant modules -----------------------------------------------------

def sc_cat(sc) -> Cat:
    def kernel(f):
        return scm.kernel_of_sc(f)

    def quotient(obj, cols):
        basis = alg.column_space(sc.field, [cols["*"]]) if cols["*"].cols \
            else Mat.zeros(sc.field, obj.dim, 0)
        proj, sect = alg.complement_projection(sc.field, basis)
        action = [proj.mul(a_).mul(sect) for a_ in obj.action]
        qm = scm.SCModule(sc, proj.rows, action)
        return qm, scm.SCMap(obj, qm, proj)

    def is_ss():
        return len(scm.radical_of(sc)) == 0

    return Cat(
        name="scmod",
        field=sc.field,
        keys=lambda m: ["*"],
        comp_dim=lambda m, k: m.dim,
        zero_obj=lambda: scm.zero_sc_module(sc),
        direct_sum=lambda ms: scm.direct_sum_sc(sc, ms),
        identity=lambda m: scm.SCMap(m, m, Mat.identity(sc.field, m.dim)),
        zero_map=lambda s, d: scm.SCMap(s, d, Mat.zeros(sc.field, d.dim, s.dim)),
        compose=lambda f, g: scm.SCMap(g.source, f.target, f.mat.mul(g.mat)),
        add_map=lambda f, g: scm.SCMap(f.source, f.target, f.mat.add(g.mat)),
        scale_map=lambda f, c: scm.SCMap(f.source, f.target, f.mat.scale(c)),
        map_mats=lambda f: {"*": f.mat},
        map_from_mats=lambda s, d, mats: scm.SCMap(s, d, mats["*"]),
        is_morphism=lambda f: f.is_valid(),
        hom_basis=scm.hom_basis_sc,
        kernel=kernel,
        quotient=quotient,
        obj_equal=lambda x, y: x.dim == y.dim and x.action == y.action,
        is_zero_obj=lambda m: m.is_zero(),
        is_semisimple_base=is_ss,
    )


# -- triples ------------------------------------------------------------------------------

def triple_cat(spec) -> Cat:
    f = spec.r.field

    def kernel(fm):
        return tm.triple_kernel(fm)

    def quotient(obj, cols):
        x_basis = alg.column_space(f, [cols["x"]]) if cols["x"].cols \
            else Mat.zeros(f, obj.x.dim, 0)
        y_basis = alg.column_space(f, [cols["y"]]) if cols["y"].cols \
            else Mat.zeros(f, obj.y.dim, 0)
        xproj, xsect = alg.complement_projection(f, x_basis)
        yproj, ysect = alg.complement_projection(f, y_basis)
        qx = scm.SCModule(spec.r, xproj.rows, [xproj.mul(a_).mul(xsect) for a_ in obj.x.action])
        qy = scm.SCModule(spec.s, yproj.rows, [yproj.mul(a_).mul(ysect) for a_ in obj.y.action])
        td_q = tm.tensor_basis(spec, qx)
        tq = tm.tensor_map(spec, obj.tensor, td_q, xproj)
        # phi-bar solves phibar . T(q_x) = q_y . phi  (T(q_x) onto by right-exactness)
        rhs = yproj.mul(obj.phi)
        phibar = _solve_right_factor(f, tq, rhs)
        if phibar is None:
            raise QuivhomError("quotient phi does not descend; columns not a subtriple")
        qt = tm.TripleModule(spec, qx, qy, phibar, td_q)
        return qt, tm.TripleMap(obj, qt, xproj, yproj)

    return Cat(
        name="triple",
        field=f,
        keys=lambda t: ["x", "y"],
        comp_dim=lambda t, k: t.x.dim if k == "x" else t.y.dim,
        zero_obj=lambda: tm.zero_triple(spec),
        direct_sum=lambda ts: tm.triple_direct_sum(spec, ts),
        identity=tm.identity_triple_map,
        zero_map=tm.zero_triple_map,
        compose=lambda a_, b_: a_.compose(b_),
        add_map=lambda a_, b_: a_.add(b_),
        scale_map=lambda a_, c: a_.scale(c),
        map_mats=lambda fm: {"x": fm.u, "y": fm.w},
        map_from_mats=lambda s, d, mats: tm.TripleMap(s, d, mats["x"], mats["y"]),
        is_morphism=lambda fm: fm.is_valid(),
        hom_basis=tm.triple_hom_basis,
        kernel=kernel,
        quotient=quotient,
        obj_equal=lambda a_, b_: (a_.x.dim == b_.x.dim and a_.y.dim == b_.y.dim
                                  and a_.x.action == b_.x.action
                                  and a_.y.action == b_.y.action and a_.phi == b_.phi),
        is_zero_obj=lambda t: t.is_zero(),
        is_semisimple_base=lambda: False,
    )


def _solve_right_factor(field, through: Mat, target: Mat):
    """Solve X . through = target for X (through has full row-reach on target)."""
    # transpose: through^T X^T = target^T, solve columnwise
    xt = solve_matrix(through.transpose(), target.transpose())
    if xt is None:
        return None
    return xt.transpose()
