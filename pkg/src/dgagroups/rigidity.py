"""Recover the graph automorphisms from the encoded DGA alone.

An automorphism f of (A, d) is pinned down, up to decomposables and exact
corrections, by its action on generators.  The solver derives that action
from the presentation by the deduction chain below; every premise it relies
on is checked against the actual differentials, and a failed premise stops
the solver with an ``inconclusive`` status instead of a guess.

1. Monomial bases in degrees 8, 10, 33, 35, 37 and 40 give
   f(x1) = l1 x1, f(x2) = l2 x2, f(yi) = mi yi and
   f(xv) = (combination of x1^5, x2^4) + sum_u g[v][u] xu.
2. d-commutation on yi gives mi as a monomial in l1, l2.
3. Monomials of d(z) that no other degree-119 element can reach give
   nu = l^w for each of them, nu being the z-coefficient of f(z).
4. Killing x1, x2, y's and z's projects f(d zv) to a_v (sum_u g[v][u] xu)^3,
   which must lie in the span of the cubes xu^3.  The coefficient of
   xu^2 xw there is 3 a_v g[v][u]^2 g[v][w], so each row of g has at most
   one nonzero entry; invertibility makes g a monomial matrix of a vertex
   permutation sigma.
5. The unreachable monomials xu^2 x1^5, xu^2 x2^4 force the decomposable
   parts of f(xv) to vanish.
6. Cubes xu^3 fix the zv-coefficients of f(zv); the remaining monomials
   xu xw r (r a power product of x1, x2) compare neighbourhoods: sigma must
   carry the labelled neighbourhood of v read off d(zv) onto that of sigma(v),
   and matched terms give binomial equations between the g's.
7. The binomial system over Q* is solved exactly: full exponent rank means
   the positive parts are 1, and the signs come from a system over GF(2).
   A rank deficit is a free one-parameter family: the DGA is then not rigid.

Each solution is finally instantiated as a generator map and checked to
commute with d, solving for exact corrections when needed.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import Element, GeneratorMap, monomial_basis, substitute
from .encoder import X_PREFIX, Z_PREFIX, DGAPresentation
from .errors import ResourceCapError
from .graph import Graph, Permutation

DEFAULT_RIGIDITY_CAP = 6
MAX_SIGN_SOLUTIONS = 4096
_PRIME = (1 << 61) - 1

RIGID = "rigid"
NON_RIGID = "non-rigid"
INCONCLUSIVE = "inconclusive"


class Inconclusive(Exception):
    pass


@dataclass
class RigiditySolution:
    """One admissible action on indecomposables.

    ``gamma`` holds the nonzero entries of the vertex coefficient matrix as
    ``{v: {u: g[v][u]}}``; ``sigma`` is the vertex permutation it encodes.
    """

    sigma: dict
    lambda1: Fraction
    lambda2: Fraction
    gamma: dict
    mu: tuple = ()
    nu: Fraction = Fraction(1)
    generator_map: GeneratorMap | None = field(default=None, repr=False)

    def is_permutation_gamma(self) -> bool:
        return all(row == {self.sigma[v]: 1} for v, row in self.gamma.items())

    def is_admissible(self) -> bool:
        return self.lambda1 == 1 and self.lambda2 == 1 and self.is_permutation_gamma()

    def permutation(self, graph: Graph) -> Permutation:
        return Permutation.from_mapping(graph, self.sigma)

    def to_dict(self):
        return {
            "sigma": dict(self.sigma),
            "lambda1": str(self.lambda1),
            "lambda2": str(self.lambda2),
            "mu": [str(m) for m in self.mu],
            "gamma": {v: {u: str(c) for u, c in row.items()} for v, row in self.gamma.items()},
            "admissible": self.is_admissible(),
        }


@dataclass
class RigidityResult:
    status: str
    solutions: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    free_parameters: list = field(default_factory=list)
    reason: str = ""

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def ok(self):
        return self.status == RIGID

    def to_dict(self):
        return {
            "status": self.status,
            "reason": self.reason,
            "solution_count": len(self.solutions),
            "free_parameters": list(self.free_parameters),
            "solutions": [s.to_dict() for s in self.solutions],
            "trace": list(self.trace),
        }


# -- differential term index -----------------------------------------------

class _TermIndex:
    """Every term of every generator differential, indexed by support."""

    def __init__(self, p: DGAPresentation):
        self.table = p.table
        self.by_support = defaultdict(list)
        for g, img in enumerate(p.differential.images):
            for m, c in img.items():
                self.by_support[frozenset(i for i, _ in m)].append((g, m, c))

    def dividers(self, t):
        exps = dict(t)
        supp = list(exps)
        out = []
        for r in range(1, len(supp) + 1):
            for sub in combinations(supp, r):
                for g, s, c in self.by_support.get(frozenset(sub), ()):
                    if all(exps[i] >= e for i, e in s):
                        out.append((g, s, c))
        return out

    def hits(self, t):
        """Generators whose differential contains ``t``, and whether a decomposable can reach it.

        A product b = g * q has d(b) = d(g) q +- g d(q), so ``t`` can occur
        in d(b) only if some differential term divides ``t``.
        """
        gens = {}
        decomposable = False
        odd = self.table.odd
        for g, s, c in self.dividers(t):
            if s == t:
                gens[g] = c
                continue
            q = dict(t)
            for i, e in s:
                q[i] -= e
            if odd[g] and q.get(g, 0):
                continue
            decomposable = True
        return gens, decomposable


# -- exact solution of multiplicative binomial systems ------------------------

def _rank(rows, ncols, modulus=None):
    """Rank of a sparse integer matrix (rows are {col: int}) over GF(p) or Q."""
    pivots = {}
    rank = 0
    for row in rows:
        if modulus:
            r = {c: v % modulus for c, v in row.items() if v % modulus}
        else:
            r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            col = min(r)
            if col not in pivots:
                if modulus:
                    inv = pow(r[col], modulus - 2, modulus)
                    r = {c: v * inv % modulus for c, v in r.items()}
                else:
                    inv = 1 / r[col]
                    r = {c: v * inv for c, v in r.items()}
                pivots[col] = r
                rank += 1
                break
            factor = r[col]
            for c, v in pivots[col].items():
                nv = r.get(c, 0) - factor * v
                if modulus:
                    nv %= modulus
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if rank == ncols:
            break
    return rank


class _BinomialSystem:
    """Equations prod_j v_j^e_j = +-1 in nonzero rationals."""

    def __init__(self):
        self.names = []
        self._index = {}
        self.rows = []

    def var(self, name):
        if name not in self._index:
            self._index[name] = len(self.names)
            self.names.append(name)
        return self._index[name]

    def add(self, exps, tag=None):
        row = {}
        for name, e in exps.items():
            if e:
                j = self.var(name)
                row[j] = row.get(j, 0) + e
        row = {j: e for j, e in row.items() if e}
        self.rows.append((row, tag))

    def rank(self):
        n = len(self.names)
        rows = [r for r, _ in self.rows]
        rk = _rank(rows, n, _PRIME)
        if rk < n:
            rk = _rank(rows, n)
        return rk

    def free_parameters(self):
        """Names of variables left free, found by exact elimination."""
        n = len(self.names)
        pivot_cols = set()
        pivots = {}
        for row, _ in self.rows:
            r = {c: Fraction(v) for c, v in row.items()}
            while r:
                col = min(r)
                if col not in pivots:
                    inv = 1 / r[col]
                    pivots[col] = {c: v * inv for c, v in r.items()}
                    pivot_cols.add(col)
                    break
                factor = r[col]
                for c, v in pivots[col].items():
                    nv = r.get(c, 0) - factor * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
        return [self.names[j] for j in range(n) if j not in pivot_cols]

    def prepare_signs(self):
        """Eliminate the exponent matrix mod 2 once; RHS vectors are solved later."""
        n = len(self.names)
        m = len(self.rows)
        reduced = []
        for k, (row, _) in enumerate(self.rows):
            bits = 0
            for j, e in row.items():
                if e & 1:
                    bits |= 1 << j
            reduced.append((bits, 1 << k))
        pivots = []
        dependencies = []
        for bits, tag in reduced:
            for pb, pt, col in pivots:
                if bits >> col & 1:
                    bits ^= pb
                    tag ^= pt
            if bits:
                col = (bits & -bits).bit_length() - 1
                # keep pivots fully reduced
                new = []
                for pb, pt, pc in pivots:
                    if pb >> col & 1:
                        pb ^= bits
                        pt ^= tag
                    new.append((pb, pt, pc))
                pivots = new + [(bits, tag, col)]
            else:
                dependencies.append(tag)
        self._sign_data = (n, m, pivots, dependencies)

    def sign_solutions(self, rhs_bits, limit=MAX_SIGN_SOLUTIONS):
        """All sign vectors s in GF(2)^n with E s = rhs; None if inconsistent."""
        n, m, pivots, dependencies = self._sign_data
        for tag in dependencies:
            if bin(tag & rhs_bits).count("1") & 1:
                return None
        pivot_cols = {col for _, _, col in pivots}
        free = [j for j in range(n) if j not in pivot_cols]
        if len(free) > limit.bit_length() - 1:
            raise Inconclusive(f"{len(free)} free sign variables")
        out = []
        for choice in range(1 << len(free)):
            s = 0
            for k, j in enumerate(free):
                if choice >> k & 1:
                    s |= 1 << j
            for pb, pt, col in pivots:
                val = bin(pt & rhs_bits).count("1") & 1
                val ^= bin(pb & s & ~(1 << col)).count("1") & 1
                if val:
                    s |= 1 << col
            out.append(s)
        return out


# -- the solver ----------------------------------------------------------------

def _weight(table, monomial, scale_names):
    w = {}
    for i, e in monomial:
        name = scale_names.get(i)
        if name is None:
            return None
        w[name] = w.get(name, 0) + e
    return w


def _neg(w):
    return {k: -v for k, v in w.items()}


def _sign_bit(ratio):
    if ratio == 1:
        return 0
    if ratio == -1:
        return 1
    raise Inconclusive(f"binomial equation with ratio {ratio} (only +-1 is supported)")


class _Solver:
    def __init__(self, p: DGAPresentation):
        self.p = p
        self.t = p.table
        self.trace = []
        self.idx = _TermIndex(p)

    def log(self, msg):
        self.trace.append(msg)

    def gi(self, name):
        if name not in self.t:
            raise Inconclusive(f"generator {name} missing")
        return self.t.index(name)

    # step 1
    def bases(self):
        t = self.t
        self.x1, self.x2 = self.gi("x1"), self.gi("x2")
        self.ys = [self.gi(n) for n in ("y1", "y2", "y3")]
        self.z = self.gi("z")
        for g in [self.x1, self.x2] + self.ys:
            basis = monomial_basis(t, t.degrees[g])
            if basis != [((g, 1),)]:
                raise Inconclusive(f"degree {t.degrees[g]} is not spanned by {t.name(g)} alone")
        self.log("bases: degrees 8, 10, 33, 35, 37 are one-dimensional, so x1, x2, y1, y2, y3 are rescaled")
        self.verts = [s.name[len(X_PREFIX):] for s in t if s.name.startswith(X_PREFIX)]
        if not self.verts:
            raise Inconclusive("no vertex generators")
        self.xv = {v: self.gi(X_PREFIX + v) for v in self.verts}
        self.zv = {v: self.gi(Z_PREFIX + v) for v in self.verts}
        self.vertex_of = {i: v for v, i in self.xv.items()}
        degs = {t.degrees[i] for i in self.xv.values()}
        if len(degs) != 1:
            raise Inconclusive("vertex generators have different degrees")
        xdeg = degs.pop()
        basis = monomial_basis(t, xdeg)
        self.decomposable_x = []
        indecomposable = set()
        for m in basis:
            if len(m) == 1 and m[0][1] == 1:
                indecomposable.add(m[0][0])
            elif all(i in (self.x1, self.x2) for i, _ in m):
                self.decomposable_x.append(m)
            else:
                raise Inconclusive(f"unexpected degree-{xdeg} monomial outside x1, x2")
        if indecomposable != set(self.xv.values()):
            raise Inconclusive(f"degree-{xdeg} indecomposables are not exactly the vertex generators")
        self.log(f"bases: degree {xdeg} = span of {len(self.decomposable_x)} monomials in x1, x2 "
                 f"and the {len(self.verts)} vertex generators")
        top = {t.degrees[i] for i in self.zv.values()} | {t.degrees[self.z]}
        if len(top) != 1:
            raise Inconclusive("z and the zv do not share a degree")
        self.top = top.pop()
        self.top_gens = [i for i, d in enumerate(t.degrees) if d == self.top]
        if set(self.top_gens) != {self.z} | set(self.zv.values()):
            raise Inconclusive(f"unexpected degree-{self.top} generators")

    # steps 2 and 3
    def scalars(self, system):
        t = self.t
        d = self.p.differential.images
        scale = {self.x1: "l1", self.x2: "l2"}
        for k, y in enumerate(self.ys, start=1):
            if not d[y]:
                raise Inconclusive(f"d({t.name(y)}) = 0")
            for m, c in d[y].items():
                w = _weight(t, m, scale)
                if w is None:
                    raise Inconclusive(f"d({t.name(y)}) has a term outside x1, x2")
                system.add({f"m{k}": 1, **_neg(w)})
            scale[y] = f"m{k}"
        self.log("y-step: m1, m2, m3 are monomials in l1, l2 read off d(y1), d(y2), d(y3)")
        private = 0
        for m, c in d[self.z].items():
            w = _weight(t, m, scale)
            if w is None:
                raise Inconclusive("d(z) has a term outside x1, x2, y1, y2, y3")
            gens, dec = self.idx.hits(m)
            if dec or set(gens) != {self.z}:
                continue
            private += 1
            system.add({"nu": 1, **_neg(w)})
            self.z_private = m
        if not private:
            raise Inconclusive("no monomial of d(z) is private to z")
        self.log(f"z-step: {private} monomials of d(z) are reachable only from z; each gives nu = l^w")

    # steps 4 and 5
    def vertex_premises(self):
        t = self.t
        d = self.p.differential.images
        xs = set(self.xv.values())
        xx = {self.x1, self.x2}
        # pure vertex terms anywhere must be cubes of a single vertex generator
        self.cube_hit = {}
        for g, img in enumerate(d):
            for m, c in img.items():
                if all(i in xs for i, _ in m):
                    if len(m) != 1 or m[0][1] != 3:
                        raise Inconclusive(f"d({t.name(g)}) has a vertex-only term that is not a cube")
                    u = self.vertex_of[m[0][0]]
                    if u in self.cube_hit:
                        raise Inconclusive(f"cube of xv:{u} occurs in two differentials")
                    self.cube_hit[u] = (g, c)
        if set(self.cube_hit) != set(self.verts):
            raise Inconclusive("some vertex cube occurs in no differential")
        self.log("projection: every vertex-only term of a differential is a single cube xu^3, "
                 "so the projection of d(A) in degree 120 lies in the span of the cubes")
        self.cube_coef = {}
        self.nbhd = {}
        for v in self.verts:
            img = d[self.zv[v]]
            pure = [(m, c) for m, c in img.items() if all(i in xs for i, _ in m)]
            if len(pure) != 1 or pure[0][0] != ((self.xv[v], 3),):
                raise Inconclusive(f"vertex-only part of d(zv:{v}) is not a multiple of its own cube")
            self.cube_coef[v] = pure[0][1]
            labelled = {}
            for m, c in img.items():
                if m == pure[0][0]:
                    continue
                vpart = [(i, e) for i, e in m if i in xs]
                rest = tuple((i, e) for i, e in m if i not in xs)
                if any(i not in xx for i, _ in rest) or not rest:
                    raise Inconclusive(f"d(zv:{v}) has a term with factors outside x1, x2, xv")
                if any(e != 1 for _, e in vpart) or len(vpart) != 2 or self.xv[v] not in dict(vpart):
                    raise Inconclusive(f"d(zv:{v}) has a mixed term not of the form xv xw r")
                w = next(self.vertex_of[i] for i, _ in vpart if i != self.xv[v])
                labelled[(w, rest)] = c
            self.nbhd[v] = labelled
        self.log("projection: f(d zv) projects to a_v (sum_u g[v][u] xu)^3; the xu^2 xw coefficient "
                 "3 a_v g[v][u]^2 g[v][w] must vanish, so each row of g has one entry and g encodes "
                 "a vertex permutation sigma")
        # step 5
        for b in self.decomposable_x:
            for u in self.verts:
                target = tuple(sorted({**dict(b), self.xv[u]: 2}.items()))
                gens, dec = self.idx.hits(target)
                if gens or dec:
                    raise Inconclusive(f"{t.name(self.xv[u])}^2 * ({b}) is reachable by d")
        self.log("decomposables: xu^2 x1^5 and xu^2 x2^4 are unreachable by d, and their coefficient "
                 "in f(d zv) is 3 a_v g[v]^2 times the decomposable coefficient, which therefore vanishes")
        # step 6 premises: cubes are private to their generator, mixed monomials only hit by generators
        rset = {r for lab in self.nbhd.values() for (_, r) in lab}
        for g, img in enumerate(d):
            for m, c in img.items():
                vpart = [(i, e) for i, e in m if i in xs]
                rest = dict((i, e) for i, e in m if i not in xs)
                if any(i not in xx for i in rest):
                    continue
                if sum(e for _, e in vpart) >= 3 and any(e >= 2 for _, e in vpart):
                    continue
                if len(vpart) == 2 and all(e == 1 for _, e in vpart) and tuple(sorted(rest.items())) in rset:
                    continue
                for r in rset:
                    rd = dict(r)
                    if all(rd.get(i, 0) >= e for i, e in rest.items()) and len(vpart) <= 2 \
                            and all(e == 1 for _, e in vpart):
                        raise Inconclusive(f"d({t.name(g)}) has a term dividing mixed monomials xu xw r")
        self.log("mixed monomials xu xw r are reached only by the generators whose differential "
                 "contains them, never by decomposables")
        self.target = {}
        for u in self.verts:
            g, c = self.cube_hit[u]
            if g not in self.top_gens or g == self.z:
                raise Inconclusive(f"cube of xv:{u} is reached by an unexpected generator")
            labelled = {}
            for m, cc in d[g].items():
                vpart = [(i, e) for i, e in m if i in xs]
                rest = tuple((i, e) for i, e in m if i not in xs)
                if len(vpart) == 2 and all(e == 1 for _, e in vpart) and self.xv[u] in dict(vpart):
                    w = next(self.vertex_of[i] for i, _ in vpart if i != self.xv[u])
                    labelled[(w, rest)] = cc
            self.target[u] = (g, c, labelled)
        self.log("cubes: the zv coefficient of f(zv) is fixed by the xu^3 coefficients; the z "
                 "coefficient vanishes because f(d zv) has no z-private monomial")

    # step 6: search for sigma
    def _colours(self):
        # joint stable colouring of source and target labelled neighbourhoods
        verts = self.verts
        src = {v: [(w, r) for (w, r) in self.nbhd[v]] for v in verts}
        tgt = {u: [(w, r) for (w, r) in self.target[u][2]] for u in verts}
        col = {("s", v): len(src[v]) for v in verts}
        col.update({("t", u): len(tgt[u]) for u in verts})
        ncol = len(set(col.values()))
        while True:
            sig = {}
            for side, adj in (("s", src), ("t", tgt)):
                for v in verts:
                    sig[(side, v)] = (col[(side, v)],
                                      tuple(sorted((r, col[(side, w)]) for w, r in adj[v])))
            palette = {}
            new = {}
            for key in sorted(sig, key=lambda k: (k[0], verts.index(k[1]))):
                new[key] = palette.setdefault(sig[key], len(palette))
            if len(palette) == ncol:
                return new
            col, ncol = new, len(palette)

    def sigmas(self):
        verts = self.verts
        col = self._colours()
        src = {v: {w: r for (w, r) in self.nbhd[v]} for v in verts}
        src_multi = {v: defaultdict(set) for v in verts}
        for v in verts:
            for (w, r) in self.nbhd[v]:
                src_multi[v][w].add(r)
        tgt_multi = {u: defaultdict(set) for u in verts}
        for u in verts:
            for (w, r) in self.target[u][2]:
                tgt_multi[u][w].add(r)
        # BFS order through the source relation, restarting per component
        order = []
        seen = set()
        for root in verts:
            if root in seen:
                continue
            seen.add(root)
            queue = deque([root])
            while queue:
                v = queue.popleft()
                order.append(v)
                for w in sorted(src[v], key=verts.index):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        cands = {v: [u for u in verts if col[("t", u)] == col[("s", v)]] for v in verts}
        src_in = {v: defaultdict(set) for v in verts}
        tgt_in = {u: defaultdict(set) for u in verts}
        for v in verts:
            for w, labels in src_multi[v].items():
                src_in[w][v] |= labels
            for w, labels in tgt_multi[v].items():
                tgt_in[w][v] |= labels
        assign = {}
        inverse = {}
        found = []

        def consistent(v, u):
            # relations between v and assigned vertices, read from both sides
            for s_rel, t_rel in ((src_multi, tgt_multi), (src_in, tgt_in)):
                for w, labels in s_rel[v].items():
                    x = assign.get(w)
                    if x is not None and t_rel[u].get(x, set()) != labels:
                        return False
                for x, labels in t_rel[u].items():
                    w = inverse.get(x)
                    if w is not None and s_rel[v].get(w, set()) != labels:
                        return False
            return True

        # iterative depth-first search; realized graphs are deep
        stack = [iter(cands[order[0]])]
        while stack:
            k = len(stack) - 1
            v = order[k]
            if v in assign:
                del inverse[assign.pop(v)]
            for u in stack[-1]:
                if u not in inverse and consistent(v, u):
                    assign[v] = u
                    inverse[u] = v
                    break
            else:
                stack.pop()
                continue
            if k + 1 == len(order):
                found.append(dict(assign))
            else:
                stack.append(iter(cands[order[k + 1]]))
        return found

    def vertex_equations(self, system):
        """Binomial rows for the mixed monomials; exponents do not depend on sigma."""
        t = self.t
        self.edge_rows = []
        for v in self.verts:
            for (w, r), c in sorted(self.nbhd[v].items(), key=lambda kv: (self.verts.index(kv[0][0]), kv[0][1])):
                lw = _weight(t, r, {self.x1: "l1", self.x2: "l2"})
                exps = {f"g[{w}]": 1, f"g[{v}]": -2}
                for k, e in lw.items():
                    exps[k] = exps.get(k, 0) + e
                system.add(exps)
                self.edge_rows.append((v, w, r, c))
        self.log(f"mixed monomials: {len(self.edge_rows)} binomial equations g[w] g[v]^-2 l^w(r) = ratio")

    def rhs(self, sigma, n_scalar_rows):
        bits = 0
        k = n_scalar_rows
        for v, w, r, c in self.edge_rows:
            u = sigma[v]
            g, a_u, lab = self.target[u]
            coef_t = lab[(sigma[w], r)]
            # g[v] g[w] l^r c = (a_v g[v]^3 / a_u) coef_t
            ratio = Fraction(self.cube_coef[v]) * coef_t / (Fraction(a_u) * c)
            if _sign_bit(ratio):
                bits |= 1 << k
            k += 1
        return bits

    def instantiate(self, sigma, values):
        t = self.t
        p = self.p
        images = {}
        images[self.x1] = values["l1"] * p.gen("x1")
        images[self.x2] = values["l2"] * p.gen("x2")
        for k, y in enumerate(self.ys, start=1):
            images[y] = values[f"m{k}"] * Element.generator(t, y)
        images[self.z] = values["nu"] * p.gen("z")
        for v in self.verts:
            u = sigma[v]
            gv = values[f"g[{v}]"]
            images[self.xv[v]] = gv * Element.generator(t, self.xv[u])
            g, a_u, _ = self.target[u]
            images[self.zv[v]] = (Fraction(self.cube_coef[v]) * gv ** 3 / a_u) * Element.generator(t, g)
        f = GeneratorMap(t, images)
        fixed = {}
        for i in [self.z] + [self.zv[v] for v in self.verts]:
            resid = substitute(f, p.differential.images[i]) - p.d(f.images[i])
            if resid:
                corr = find_preimage(p, resid, self.idx)
                if corr is None:
                    raise Inconclusive(f"no exact correction for {t.name(i)}")
                fixed[i] = f.images[i] + corr
        if fixed:
            f = GeneratorMap(t, {**dict(enumerate(f.images)), **fixed})
        for i in range(len(t)):
            if substitute(f, p.differential.images[i]) != p.d(f.images[i]):
                raise Inconclusive(f"instantiated map fails on {t.name(i)}")
        return GeneratorMap(t, dict(enumerate(f.images)), verified=True)


def find_preimage(p: DGAPresentation, target: Element, index=None, depth=3):
    """Some e in degree |target| - 1 with d(e) = target, or None.

    Candidates come from the divisor index and grow for ``depth`` rounds;
    the linear system is solved exactly over Q.
    """
    t = p.table
    index = index or _TermIndex(p)
    deg = target.degree()
    if deg is None:
        return None
    cands = set()
    frontier = set(target.monomials())
    rows = set(frontier)
    for _ in range(depth):
        new = set()
        for m in frontier:
            for g, s, c in index.dividers(m):
                q = dict(m)
                for i, e in s:
                    q[i] -= e
                q = [(i, e) for i, e in q.items() if e]
                b = Element.from_factors(t, [(g, 1)] + q)
                if b:
                    mono = next(iter(b.monomials()))
                    if mono not in cands:
                        cands.add(mono)
                        new.add(mono)
        images = {b: p.d(Element.monomial(t, b)) for b in cands}
        for img in images.values():
            rows.update(img.monomials())
        sol = _solve_linear(target, images, rows)
        if sol is not None:
            return Element(t, {b: c for b, c in sol.items()})
        frontier = set()
        for b in new:
            frontier.update(images[b].monomials())
        frontier -= set(target.monomials())
        if not frontier:
            break
    return None


def _solve_linear(target, images, rows):
    cols = sorted(images)
    eqs = []
    for m in rows:
        row = {j: img.coefficient(m) for j, img in enumerate(images[b] for b in cols)
               if img.coefficient(m)}
        eqs.append((row, Fraction(target.coefficient(m))))
    pivots = {}
    for row, rhs in eqs:
        row = dict(row)
        for col, (prow, prhs) in pivots.items():
            if col in row:
                f = row[col]
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                rhs -= f * prhs
        if not row:
            if rhs:
                return None
            continue
        col = min(row)
        inv = 1 / Fraction(row[col])
        row = {c: v * inv for c, v in row.items()}
        rhs *= inv
        for pc, (prow, prhs) in list(pivots.items()):
            if col in prow:
                f = prow[col]
                nrow = dict(prow)
                for c, v in row.items():
                    nv = nrow.get(c, 0) - f * v
                    if nv:
                        nrow[c] = nv
                    else:
                        nrow.pop(c, None)
                pivots[pc] = (nrow, prhs - f * rhs)
        pivots[col] = (row, rhs)
    sol = {}
    for col, (row, rhs) in pivots.items():
        if rhs:
            sol[cols[col]] = rhs
    return sol


def solve_rigidity(p: DGAPresentation, g: Graph, cap: int = DEFAULT_RIGIDITY_CAP) -> RigidityResult:
    """Determine the actions on indecomposables of all automorphisms of ``p``.

    ``g`` is only used to check that ``p`` encodes a graph on the same
    vertices and to apply the size cap; everything else is read from ``p``.
    """
    if len(g.vertices) > cap:
        raise ResourceCapError("solve_rigidity", len(g.vertices), cap)
    if sorted(p.vertices) != sorted(g.vertices):
        raise ValueError("presentation does not encode a graph on these vertices")
    s = _Solver(p)
    try:
        s.bases()
        system = _BinomialSystem()
        for name in ["l1", "l2", "m1", "m2", "m3", "nu"] + [f"g[{v}]" for v in s.verts]:
            system.var(name)
        s.scalars(system)
        n_scalar_rows = len(system.rows)
        s.vertex_premises()
        s.vertex_equations(system)
        rank = system.rank()
        nvars = len(system.names)
        free = [] if rank == nvars else system.free_parameters()
        if free:
            s.log(f"binomials: exponent rank {rank} < {nvars}; free parameters {free}")
        else:
            s.log(f"binomials: exponent rank {rank} = number of unknowns, all absolute values are 1")
        system.prepare_signs()
        sigmas = s.sigmas()
        s.log(f"sigma search: {len(sigmas)} vertex permutations match the labelled neighbourhoods")
        solutions = []
        for sigma in sigmas:
            bits = s.rhs(sigma, n_scalar_rows)
            signs = system.sign_solutions(bits)
            if signs is None:
                continue
            for vec in signs:
                values = {name: Fraction(-1 if vec >> j & 1 else 1)
                          for j, name in enumerate(system.names)}
                f = s.instantiate(sigma, values)
                solutions.append(RigiditySolution(
                    sigma=dict(sigma),
                    lambda1=values["l1"],
                    lambda2=values["l2"],
                    gamma={v: {sigma[v]: values[f"g[{v}]"]} for v in s.verts},
                    mu=(values["m1"], values["m2"], values["m3"]),
                    nu=values["nu"],
                    generator_map=f,
                ))
        s.log(f"instantiated and verified {len(solutions)} generator maps")
    except Inconclusive as exc:
        s.log(f"inconclusive: {exc}")
        return RigidityResult(INCONCLUSIVE, [], s.trace, [], str(exc))
    if free:
        return RigidityResult(NON_RIGID, solutions, s.trace, free,
                              "free scalar parameters remain; listed solutions are sign representatives")
    return RigidityResult(RIGID, solutions, s.trace, [], "")
