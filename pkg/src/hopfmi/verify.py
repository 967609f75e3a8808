"""Named identities tying the multi-index and forest Hopf algebras together.

Each identity is checked exhaustively over basis elements of bounded degree
(``gl-key`` additionally uses a seeded random sample of larger triples).
Basis elements are visited in increasing degree and canonical order, so the
first reported failure is a smallest counterexample.
"""
import random
import time
from dataclasses import dataclass, field
from itertools import permutations, product

from hopfmi.bseries import (
    Poly,
    bseries_truncated,
    check_morphism_law,
    check_tree_consistency,
)
from hopfmi.errors import BoundError
from hopfmi.fertility import jmath, phi, phi_preimage, phi_tree
from hopfmi.forests import (
    ENUMERATION_BOUND,
    Forest,
    Tree,
    antipode_bck,
    bck_cuts,
    bminus,
    coproduct_bck,
    cut_counts,
    enumerate_forests,
    enumerate_trees,
    gl_forest,
    gl_graft_or_fall,
    gl_graft_or_fall_counts,
    graft,
    guin_oudom_forest,
    multigraft,
    sigma_split,
    tree_sigma,
)
from hopfmi.linear import LinComb, accumulate, apply_legs, bilinear_extend
from hopfmi.lot import (
    UNIT_BAG,
    Lbar,
    antipode_lot,
    convolution_check,
    coproduct_dual_oracle,
    coproduct_lot,
    gl_bags,
    go_bags,
)
from hopfmi.multiindex import (
    MonomialBag,
    MultiIndex,
    L_op,
    bags_of_degree,
    dbar_pow,
    mi_admissible_cuts,
    monomials_of_weight,
    novikov,
    sigma_bag,
    weight_minus_one_monomials,
)
from hopfmi.textio import format_lincomb

IDENTITIES = (
    "phi-prelie",
    "phi-hopf",
    "phib",
    "phibtr",
    "jdbar",
    "hopf-morphism",
    "coprod-rec",
    "main-lemma",
    "sym-forest-count",
    "duality",
)
EXTRA_IDENTITIES = (
    "coassoc-lot",
    "coassoc-bck",
    "prelie-graft",
    "novikov-axioms",
    "gl-key",
    "cut-graft-count",
    "integrality",
    "nondegeneracy",
    "antipode",
    "jmath-injective",
    "bseries",
)
ALL_IDENTITIES = IDENTITIES + EXTRA_IDENTITIES


@dataclass
class VerifyReport:
    identity: str
    max_degree: int
    alphabet: tuple
    cases: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.identity} degree<={self.max_degree} "
            f"alphabet={','.join(self.alphabet)} cases={self.cases} "
            f"failures={len(self.failures)} time={self.elapsed:.2f}s"
        )

    def as_dict(self):
        return {
            "identity": self.identity,
            "max_degree": self.max_degree,
            "alphabet": list(self.alphabet),
            "cases": self.cases,
            "failures": list(self.failures),
            "elapsed": round(self.elapsed, 3),
            "passed": self.passed,
        }


class _Run:
    def __init__(self, D, alphabet, seed):
        self.D = D
        self.alphabet = alphabet
        self.rng = random.Random(seed)
        self.cases = 0
        self.failures = []

    def check(self, ok, message):
        self.cases += 1
        if not ok:
            self.failures.append(message() if callable(message) else message)

    def equal(self, lhs, rhs, label):
        self.check(lhs == rhs, lambda: f"{label}: lhs - rhs = {_show(lhs - rhs)}")

    # basis enumerations ------------------------------------------------------
    def monomials(self, lo=1, hi=None):
        hi = self.D if hi is None else hi
        return [k for n in range(lo, hi + 1) for k in weight_minus_one_monomials(n, self.alphabet)]

    def bags(self, lo=0, hi=None):
        hi = self.D if hi is None else hi
        return [B for n in range(lo, hi + 1) for B in bags_of_degree(n, self.alphabet)]

    def trees(self, lo=1, hi=None):
        hi = self.D if hi is None else hi
        return [t for n in range(lo, hi + 1) for t in enumerate_trees(n, self.alphabet)]

    def forests(self, lo=0, hi=None):
        hi = self.D if hi is None else hi
        return [F for n in range(lo, hi + 1) for F in enumerate_forests(n, self.alphabet)]


def _show(x):
    text = format_lincomb(x, show_decoration=True)
    return text if len(text) < 400 else text[:400] + " ..."


def _bag_of(m):
    return MonomialBag._make((m,))


def _as_bags(x):
    """Combination of weight −1 monomials viewed as a combination of one-factor bags."""
    return x.map_keys(_bag_of)


def _jj(t):
    return apply_legs(t, (jmath, jmath))


def _right_leg_lot(cut):
    if cut.is_full:
        return LinComb.basis(UNIT_BAG)
    return _as_bags(dbar_pow(cut.remainder, cut.r))


# -- the identities --------------------------------------------------------------------


def _phi_prelie(run):
    trees = run.trees(hi=run.D - 1)
    for s in trees:
        for t in trees:
            if s.size + t.size > run.D:
                continue
            lhs = graft(s, t).map_keys(phi_tree)
            run.equal(lhs, novikov(phi_tree(s), phi_tree(t)), f"Φ(graft({s}, {t}))")


def _phi_hopf(run):
    forests = run.forests()
    for F in forests:
        for G in forests:
            if F.degree + G.degree > run.D:
                continue
            lhs = gl_forest(F, G).map_keys(phi)
            run.equal(lhs, gl_bags(phi(F), phi(G)), f"Φ({F} ⋆ {G})")


def _phib(run):
    for F in run.forests(hi=run.D - 1):
        for a in run.alphabet:
            t = Tree(a, F)
            run.equal(
                LinComb.basis(phi_tree(t)), LinComb.basis(L_op(phi(F), a)), f"Φ(B+^{a}({F}))"
            )


def _phibtr(run):
    for k in run.monomials():
        image = jmath(k)
        for a in run.alphabet:
            lhs = jmath(Lbar(k, a))
            rhs = image.map(lambda F, a=a: bminus(F, a))
            run.equal(lhs, rhs, f"ȷ(Lbar^{a}({k}))")


def _lowering_words(k, r):
    """``∂̄^r x^k`` by brute force over ordered lowering words on labelled variables."""
    slots = [(a, j) for (a, j), m in k.entries for _ in range(m)]
    counts = {}
    for word in product(range(len(slots)), repeat=r):
        cur = list(slots)
        for i in word:
            a, j = cur[i]
            if j < 0:
                break
            cur[i] = (a, j - 1)
        else:
            m = MultiIndex(((key, 1) for key in cur))
            counts[m] = counts.get(m, 0) + 1
    return counts


def _jdbar(run):
    for n in range(1, run.D + 1):
        for r in range(0, run.D + 1):
            for k in monomials_of_weight(n, r - 1, run.alphabet):
                lhs = jmath(_as_bags(dbar_pow(k, r)))
                acc = {}
                for m, c in _lowering_words(k, r).items():
                    mf = m.factorial
                    for t in phi_preimage(m):
                        accumulate(acc, Forest([t]), c * mf // tree_sigma(t))
                rhs = LinComb.from_accumulator(acc)
                run.equal(lhs, rhs, f"ȷ(∂̄^{r} {k})")
                kf = k.factorial
                run.check(
                    all((c * tree_sigma(F[0])) % kf == 0 and c > 0 for F, c in lhs.raw_items()),
                    lambda k=k, r=r: f"ȷ(∂̄^{r} {k}): coefficient not a positive multiple of k!/σ(t)",
                )


def _hopf_morphism(run):
    for k in run.monomials():
        run.equal(_jj(coproduct_lot(k)), coproduct_bck(jmath(k)), f"Δ∘ȷ({k})")


def _coprod_rec(run):
    empty = Forest()
    for k in run.monomials():
        lhs = _jj(coproduct_lot(k))
        rhs = jmath(k).map_keys(lambda F: (F, empty))
        for a in run.alphabet:
            inner = _jj(coproduct_lot(Lbar(k, a)))
            rhs = rhs + apply_legs(
                inner, (None, lambda F, a=a: LinComb.basis(Forest([Tree(a, F)])))
            )
        run.equal(lhs, rhs, f"recursive coproduct of {k}")


def _main_lemma(run):
    for k in run.monomials():
        fiber = phi_preimage(k)
        sk = k.factorial
        tree_cuts = [(t, bck_cuts(Forest([t]))) for t in fiber]
        for cut in mi_admissible_cuts(k):
            left = jmath(cut.bag)
            right = jmath(_right_leg_lot(cut))
            lhs = LinComb.from_accumulator(
                {
                    (F, G): cut.multiplicity * c1 * c2
                    for F, c1 in left.raw_items()
                    for G, c2 in right.raw_items()
                }
            )
            acc = {}
            for t, cuts in tree_cuts:
                st = tree_sigma(t)
                for c in cuts:
                    if phi(c.pruning) == cut.bag:
                        accumulate(acc, (c.pruning, c.trunk), sk // st)
            run.equal(lhs, LinComb.from_accumulator(acc), f"matched cuts of {k} at {cut.bag}")


def _sym_forest_count(run):
    for F in run.forests(lo=1):
        M = phi(F)
        trees = tuple(F)
        tuples = {
            perm
            for perm in permutations(trees)
            if all(phi_tree(t) == m for t, m in zip(perm, M))
        }
        ext_F = sigma_split(F)[1]
        ext_M = sigma_bag(M)[1]
        run.check(
            len(tuples) * ext_F == ext_M,
            lambda F=F, n=len(tuples): f"{F}: {n} tuples, σext(M)={ext_M}, σext(F)={ext_F}",
        )


def _duality(run):
    for k in run.monomials():
        run.equal(coproduct_lot(k), coproduct_dual_oracle(k), f"Δ({k}) vs dual of ⋆")


def _coassoc(run, basis, delta, unit):
    for x in basis:
        d = delta(x)
        left = {}
        right = {}
        for (P, Q), c in d.raw_items():
            for (P1, P2), c2 in delta(P).raw_items():
                accumulate(left, (P1, P2, Q), c * c2)
            for (Q1, Q2), c2 in delta(Q).raw_items():
                accumulate(right, (P, Q1, Q2), c * c2)
        run.equal(
            LinComb.from_accumulator(left), LinComb.from_accumulator(right), f"coassociativity at {x}"
        )
        eps_left = LinComb.from_accumulator({Q: c for (P, Q), c in d.raw_items() if P == unit})
        eps_right = LinComb.from_accumulator({P: c for (P, Q), c in d.raw_items() if Q == unit})
        run.equal(eps_left, LinComb.basis(x), f"left counit at {x}")
        run.equal(eps_right, LinComb.basis(x), f"right counit at {x}")


def _coassoc_lot(run):
    _coassoc(run, run.bags(), lambda B: coproduct_lot(B), UNIT_BAG)


def _coassoc_bck(run):
    _coassoc(run, run.forests(), lambda F: coproduct_bck(F), Forest())


def _prelie_graft(run):
    trees = run.trees(hi=max(1, run.D - 2))
    basis = LinComb.basis
    for s, t, u in product(trees, repeat=3):
        def assoc(x, y):
            return bilinear_extend(graft, basis(x), graft(y, u)) - bilinear_extend(
                graft, graft(x, y), basis(u)
            )

        run.equal(assoc(s, t), assoc(t, s), f"pre-Lie identity at ({s}, {t}, {u})")


def _novikov_axioms(run):
    monos = run.monomials(hi=max(1, run.D - 1))

    def left_then(p, q, z, sign, acc):
        # adds sign * p ▷ (q ▷ z) - sign * (p ▷ q) ▷ z
        for m, c in novikov(q, z).raw_items():
            for m2, c2 in novikov(p, m).raw_items():
                accumulate(acc, m2, sign * c * c2)
        for m, c in novikov(p, q).raw_items():
            for m2, c2 in novikov(m, z).raw_items():
                accumulate(acc, m2, -sign * c * c2)

    def nap(x, y, z, sign, acc):
        for m, c in novikov(x, y).raw_items():
            for m2, c2 in novikov(m, z).raw_items():
                accumulate(acc, m2, sign * c * c2)

    for x, y, z in product(monos, repeat=3):
        acc = {}
        left_then(x, y, z, 1, acc)
        left_then(y, x, z, -1, acc)
        run.check(not any(acc.values()), lambda x=x, y=y, z=z: f"left pre-Lie fails at ({x}, {y}, {z})")
        acc = {}
        nap(x, y, z, 1, acc)
        nap(x, z, y, -1, acc)
        run.check(not any(acc.values()), lambda x=x, y=y, z=z: f"right-NAP fails at ({x}, {y}, {z})")


def _gl_key(run):
    D = run.D
    forests = run.forests()
    for F in forests:
        for G in forests:
            if F.degree + G.degree > D:
                continue
            run.equal(guin_oudom_forest(F, G), multigraft(F, G), f"{F} ▷ {G}: recursion vs multigraft")
            run.equal(gl_forest(F, G), gl_graft_or_fall(F, G), f"{F} ⋆ {G}: GL vs graft-or-fall")

    def go_lin(go, x, y):
        return bilinear_extend(go, x, y)

    sides = (
        ("forest", lambda n: enumerate_forests(n, run.alphabet), guin_oudom_forest, gl_forest),
        ("bag", lambda n: bags_of_degree(n, run.alphabet), go_bags, gl_bags),
    )
    samples = 12
    for label, pool, go, gl in sides:
        for _ in range(samples):
            total = run.rng.randint(3, D + 2)
            cut1, cut2 = sorted(run.rng.sample(range(1, total), 2)) if total > 2 else (1, 2)
            X = run.rng.choice(pool(cut1))
            Y = run.rng.choice(pool(cut2 - cut1))
            Z = run.rng.choice(pool(total - cut2))
            bX, bZ = LinComb.basis(X), LinComb.basis(Z)
            run.equal(
                go_lin(go, bX, go(Y, Z)),
                go_lin(go, gl(X, Y), bZ),
                f"{label}: X▷(Y▷Z) vs (X⋆Y)▷Z at ({X}, {Y}, {Z})",
            )
            run.equal(
                go_lin(gl, gl(X, Y), bZ),
                go_lin(gl, bX, gl(Y, Z)),
                f"{label}: associativity of ⋆ at ({X}, {Y}, {Z})",
            )


def _cut_graft_count(run):
    for n in range(0, run.D + 1):
        us = enumerate_forests(n, run.alphabet)
        cuts = {u: cut_counts(u) for u in us}
        for p in range(0, n + 1):
            for v in enumerate_forests(p, run.alphabet):
                sv = sigma_split(v)[0]
                for w in enumerate_forests(n - p, run.alphabet):
                    sw = sigma_split(w)[0]
                    grafts = gl_graft_or_fall_counts(v, w)
                    for u in us:
                        C = cuts[u].get((v, w), 0)
                        G = grafts.get(u, 0)
                        run.check(
                            C * sv * sw == sigma_split(u)[0] * G,
                            lambda u=u, v=v, w=w, C=C, G=G: f"u={u}, v={v}, w={w}: C={C}, G={G}",
                        )


def _integrality(run):
    for B in run.bags():
        run.check(coproduct_lot(B).is_integral(), f"Δ_LOT({B}) has a non-integral coefficient")
    for F in run.forests():
        run.check(coproduct_bck(F).is_integral(), f"Δ_BCK({F}) has a non-integral coefficient")
    bags = run.bags()
    for X in bags:
        for Y in bags:
            if X.degree + Y.degree <= run.D:
                run.check(gl_bags(X, Y).is_integral(), f"{X} ⋆ {Y} has a non-integral coefficient")
    forests = run.forests()
    for F in forests:
        for G in forests:
            if F.degree + G.degree <= run.D:
                run.check(gl_forest(F, G).is_integral(), f"{F} ⋆ {G} has a non-integral coefficient")
    for k in run.monomials():
        image = jmath(k)
        run.check(bool(image) and image.is_integral(), f"ȷ({k}) is not a positive integral sum")


def _nondegeneracy(run):
    for B in run.bags(lo=1):
        d = coproduct_lot(B)
        primitive = all(not P or not Q for P, Q in d.keys()) and d == LinComb.from_accumulator(
            {(B, UNIT_BAG): 1, (UNIT_BAG, B): 1}
        )
        run.check(primitive == (B.degree == 1), f"{B}: primitive={primitive}")
    empty = Forest()
    for F in run.forests(lo=1):
        d = coproduct_bck(F)
        primitive = d == LinComb.from_accumulator({(F, empty): 1, (empty, F): 1})
        run.check(primitive == (F.degree == 1), f"{F}: primitive={primitive}")


def _antipode(run):
    for B in run.bags():
        expected = LinComb.basis(UNIT_BAG) if not B else LinComb.zero()
        run.equal(convolution_check(B), expected, f"m(S⊗id)Δ({B})")
        acc = {}
        for (P, Q), c in coproduct_lot(B).raw_items():
            for R, c2 in antipode_lot(Q).raw_items():
                accumulate(acc, P.odot(R), c * c2)
        run.equal(LinComb.from_accumulator(acc), expected, f"m(id⊗S)Δ({B})")
    empty = Forest()
    for F in run.forests():
        expected = LinComb.basis(empty) if not F else LinComb.zero()
        acc = {}
        for (P, Q), c in coproduct_bck(F).raw_items():
            for R, c2 in antipode_bck(P).raw_items():
                accumulate(acc, R.mul(Q), c * c2)
        run.equal(LinComb.from_accumulator(acc), expected, f"m(S⊗id)Δ({F})")
    if run.D >= 2 and "a" in run.alphabet:
        k = MultiIndex({("a", -1): 1, ("a", 0): 1})
        x = MultiIndex.var("a", -1)
        expected = LinComb.from_accumulator({_bag_of(k): -1, MonomialBag._make((x, x)): 1})
        run.equal(antipode_lot(k), expected, "S(x{-1}x{0})")


def _jmath_injective(run):
    owner = {}
    for B in run.bags(lo=1):
        image = jmath(B)
        run.check(bool(image), f"ȷ({B}) = 0")
        for F in image.keys():
            prev = owner.setdefault(F, B)
            run.check(prev == B, lambda F=F, B=B, prev=prev: f"{F} lies in the images of {prev} and {B}")


def _bseries(run):
    seed = run.rng.randrange(1 << 30)
    for cases, failures in (
        check_morphism_law(max(1, run.D - 1), run.alphabet, seed),
        check_tree_consistency(run.D, run.alphabet, seed),
    ):
        run.cases += cases
        run.failures.extend(failures)
    if run.D >= 3:
        f = {a: Poly.y() for a in run.alphabet}
        got = bseries_truncated({}, f, 3, default=1)
        if run.alphabet == ("a",):
            run.check(got == Poly([0, "5/2"]), f"B-series with α ≡ 1, f = y, N = 3 gave {got}")


_CHECKS = {
    "phi-prelie": _phi_prelie,
    "phi-hopf": _phi_hopf,
    "phib": _phib,
    "phibtr": _phibtr,
    "jdbar": _jdbar,
    "hopf-morphism": _hopf_morphism,
    "coprod-rec": _coprod_rec,
    "main-lemma": _main_lemma,
    "sym-forest-count": _sym_forest_count,
    "duality": _duality,
    "coassoc-lot": _coassoc_lot,
    "coassoc-bck": _coassoc_bck,
    "prelie-graft": _prelie_graft,
    "novikov-axioms": _novikov_axioms,
    "gl-key": _gl_key,
    "cut-graft-count": _cut_graft_count,
    "integrality": _integrality,
    "nondegeneracy": _nondegeneracy,
    "antipode": _antipode,
    "jmath-injective": _jmath_injective,
    "bseries": _bseries,
}


def verify_identity(name, max_degree, alphabet=("a",), seed=0):
    """Check the named identity on all basis elements up to ``max_degree``."""
    if name not in _CHECKS:
        raise ValueError(f"unknown identity {name!r}; choose from {', '.join(ALL_IDENTITIES)}")
    if max_degree > ENUMERATION_BOUND:
        raise BoundError(f"degree {max_degree} exceeds the enumeration bound {ENUMERATION_BOUND}")
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    alphabet = tuple(sorted(alphabet))
    run = _Run(max_degree, alphabet, seed)
    start = time.perf_counter()
    _CHECKS[name](run)
    elapsed = time.perf_counter() - start
    return VerifyReport(name, max_degree, alphabet, run.cases, run.failures, elapsed)


def verify_all(max_degree, alphabet=("a",), seed=0, names=ALL_IDENTITIES):
    return [verify_identity(n, max_degree, alphabet, seed) for n in names]
