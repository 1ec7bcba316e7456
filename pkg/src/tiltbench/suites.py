"""Named property suites over all modules, with a one-to-one law registry.

Every suite draws per-sample generators from (seed, suite name, index), so
a run is reproducible regardless of scheduling, and records serialised
counterexamples for each failure.  The registry carries a short statement
of the law a suite checks; the verifier prints it in the report header.

Two suites are negative controls: one is designed to fail (a deliberately
corrupted truncation) and one asserts that the cogeneration check on the
free class correctly rejects torsion witnesses.  A clean pass on the raw
corrupted suite would indicate a vacuous checker.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import modules, samplers, serialize
from .complexes import (
    cohomology,
    derived_hom,
    free_complex,
    free_resolution,
    is_contractible,
    is_exact,
    is_nullhomotopic,
)
from .exactness import (
    Carrier,
    ExactStructure,
    Flavor,
    carrier_pullback,
    carrier_pushout,
    is_acyclic_wrt,
    is_deflation,
    is_inflation,
)
from .freyd import (
    Fraction,
    FreydMorphism,
    FreydObject,
    auslander_project,
    evaluate,
    evaluate_map,
    factors_through_effaceable,
    fraction_compose,
    freyd_cokernel,
    freyd_compose,
    freyd_equal,
    freyd_kernel,
    is_effaceable,
    project_fraction,
    project_morphism,
    refine_fraction,
    right_filter_factor,
)
from .matrices import IntMatrix, is_unimodular, kernel_matrix, smith_normal_form, solve_lift
from .modules import FpModule, FpMorphism
from .reports import CheckReport
from .rings import QPoly, RingSpec, divides
from .samplers import SizeBounds, rng_for
from .tstructures import (
    ClassTag,
    TStructureSpec,
    TVariant,
    check_tstructure_axioms,
    cogeneration_witness,
    heart_membership,
    in_aisle,
    intersection_normal_form,
    left_heart_map_to_module_map,
    left_heart_to_module,
    module_map_to_left_heart_map,
    module_to_left_heart,
    star_membership,
    t_cohomology,
    tilting_class_check,
    triangle_is_distinguished,
    truncate_ge,
    truncate_le,
)

Z = RingSpec.INTEGERS
QX = RingSpec.RATIONAL_POLYNOMIALS

FREE_SPLIT = ExactStructure(Carrier.FREE_Z, Flavor.SPLIT)
FREE_MAX = ExactStructure(Carrier.FREE_Z, Flavor.MAXIMAL)
FP_MAX = ExactStructure(Carrier.FP_Z, Flavor.MAXIMAL)
TOR_INH = ExactStructure(Carrier.TORSION_Z, Flavor.INHERITED)


@dataclass
class SuiteDef:
    name: str
    law: str
    run: Callable[[int, int, SizeBounds], CheckReport]
    negative_control: bool = False


def _timed(fn):
    def wrapper(budget: int, seed: int, bounds: SizeBounds) -> CheckReport:
        start = time.perf_counter()
        report = fn(budget, seed, bounds)
        report.wall_time = time.perf_counter() - start
        return report

    return wrapper


# -- exact linear algebra ------------------------------------------------------

def _suite_snf_identities(budget, seed, bounds):
    report = CheckReport("snf_identities",
                         "U*M*V = D diagonal with d1 | d2 | ... and unimodular U, V",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "snf", i)
        rows = rnd.randint(1, max(bounds.max_rank, 1))
        cols = rnd.randint(1, max(bounds.max_rank, 1))
        m = samplers.random_matrix(rnd, rows, cols, bounds.max_entry)
        u, d, v = smith_normal_form(m)
        payload = {"matrix": serialize.matrix_to_json(m)}
        if u * m * v != d:
            report.record(i, "transform_identity", payload)
        if not (is_unimodular(u) and is_unimodular(v)):
            report.record(i, "unimodular_transforms", payload)
        diag = [d.at(j, j) for j in range(min(rows, cols))]
        if any(not divides(Z, a, b) for a, b in zip(diag, diag[1:])):
            report.record(i, "divisibility_chain", payload)
        if any(not (j == k or d.at(j, k) == 0)
               for j in range(d.rows) for k in range(d.cols)):
            report.record(i, "off_diagonal_zero", payload)
        report.samples += 1
    return report


def _suite_snf_polynomials(budget, seed, bounds):
    report = CheckReport("snf_polynomials",
                         "normal form identities over exact rational polynomials",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "snf-poly", i)
        rows = rnd.randint(1, 3)
        cols = rnd.randint(1, 3)
        def rand_poly():
            return QPoly([rnd.randint(-3, 3) for _ in range(rnd.randint(1, 3))])
        m = IntMatrix.from_rows(QX, [[rand_poly() for _ in range(cols)]
                                     for _ in range(rows)], cols=cols)
        u, d, v = smith_normal_form(m)
        if u * m * v != d:
            report.record(i, "transform_identity", {})
        if not (is_unimodular(u) and is_unimodular(v)):
            report.record(i, "unimodular_transforms", {})
        diag = [d.at(j, j) for j in range(min(rows, cols))]
        if any(not divides(QX, a, b) for a, b in zip(diag, diag[1:])):
            report.record(i, "divisibility_chain", {})
        report.samples += 1
    return report


def _suite_solve_kernel_duality(budget, seed, bounds):
    report = CheckReport("solve_kernel_duality",
                         "A*X = B solvable iff diagonalised system divides; "
                         "kernel columns span the solution lattice",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "solve", i)
        rows = rnd.randint(1, max(bounds.max_rank, 1))
        cols = rnd.randint(1, max(bounds.max_rank, 1))
        a = samplers.random_matrix(rnd, rows, cols, bounds.max_entry)
        payload = {"matrix": serialize.matrix_to_json(a)}
        y = samplers.random_matrix(rnd, cols, 1, 3)
        b = a * y
        x = solve_lift(a, b)
        if x is None or a * x != b:
            report.record(i, "solvable_system", payload)
        b2 = samplers.random_matrix(rnd, rows, 1, bounds.max_entry)
        x2 = solve_lift(a, b2)
        if x2 is None:
            u, d, _ = smith_normal_form(a)
            ub = u * b2
            r = min(rows, cols)
            obstructed = any(
                (j >= r or d.at(j, j) == 0) and ub.at(j, 0) != 0
                or (j < r and d.at(j, j) != 0 and ub.at(j, 0) % d.at(j, j) != 0)
                for j in range(rows))
            if not obstructed:
                report.record(i, "absence_without_obstruction", payload)
        elif a * x2 != b2:
            report.record(i, "inexact_solution", payload)
        k = kernel_matrix(a)
        if not (a * k).is_zero():
            report.record(i, "kernel_killed", payload)
        if k.cols:
            coeff = samplers.random_matrix(rnd, k.cols, 1, 3)
            x3 = k * coeff
            if solve_lift(k, x3) is None:
                report.record(i, "kernel_span_membership", payload)
        report.samples += 1
    return report


# -- finitely presented modules ---------------------------------------------------

def _suite_fp_universal_properties(budget, seed, bounds):
    report = CheckReport("fp_universal_properties",
                         "kernel/cokernel factorisations exist and are unique",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "fpuniv", i)
        src = samplers.random_module(rnd, bounds)
        tgt = samplers.random_module(rnd, bounds)
        f = samplers.random_morphism(rnd, src, tgt)
        payload = {"morphism": serialize.morphism_to_json(f)}
        k_mod, incl = modules.kernel(f)
        if not modules.is_mono(incl):
            report.record(i, "kernel_monic", payload)
        if not modules.is_zero_morphism(modules.compose(f, incl)):
            report.record(i, "kernel_killed", payload)
        test = samplers.random_module(rnd, bounds)
        h = samplers.random_morphism(rnd, test, k_mod)
        g = modules.compose(incl, h)
        back = modules.factor(g, incl)
        if back is None or not modules.morphism_equal(
                modules.compose(incl, back), g):
            report.record(i, "kernel_factorisation_exists", payload)
        elif not modules.morphism_equal(back, h):
            report.record(i, "kernel_factorisation_unique", payload)
        c_mod, proj = modules.cokernel(f)
        if not modules.is_epi(proj):
            report.record(i, "cokernel_epi", payload)
        if not modules.is_zero_morphism(modules.compose(proj, f)):
            report.record(i, "cokernel_killed", payload)
        h2 = samplers.random_morphism(rnd, c_mod, samplers.random_module(rnd, bounds))
        g2 = modules.compose(h2, proj)
        back2 = modules.cofactor(g2, proj)
        if back2 is None or not modules.morphism_equal(
                modules.compose(back2, proj), g2):
            report.record(i, "cokernel_factorisation_exists", payload)
        elif not modules.morphism_equal(back2, h2):
            report.record(i, "cokernel_factorisation_unique", payload)
        report.samples += 1
    return report


def _suite_torsion_pair(budget, seed, bounds):
    report = CheckReport("torsion_pair_axioms",
                         "no maps from finite to free parts; the decomposition "
                         "sequence is exact and idempotent",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "torsion", i)
        m = samplers.random_module(rnd, bounds)
        n = samplers.random_module(rnd, bounds)
        t_mod, incl, f_mod, proj = modules.torsion_decompose(m)
        payload = {"module": serialize.module_to_json(m)}
        _, _, n_free, _ = modules.torsion_decompose(n)
        if not modules.hom_group(t_mod, n_free).module.is_zero_module():
            report.record(i, "orthogonality", payload)
        if not modules.is_mono(incl) or not modules.is_epi(proj):
            report.record(i, "sequence_ends", payload)
        k_mod, k_incl = modules.kernel(proj)
        if modules.factor(k_incl, incl) is None or modules.factor(incl, k_incl) is None:
            report.record(i, "exactness", payload)
        t2, _, _, _ = modules.torsion_decompose(t_mod)
        if not t2.is_isomorphic(t_mod):
            report.record(i, "idempotence", payload)
        report.samples += 1
    return report


def _suite_global_dimension(budget, seed, bounds):
    report = CheckReport("global_dimension",
                         "free resolutions of length <= 1; right-aisle window "
                         "sits inside the left aisle",
                         seed)
    left = TStructureSpec.left(FREE_SPLIT)
    right = TStructureSpec.right(FREE_SPLIT)
    for i in range(budget):
        rnd = rng_for(seed, "gldim", i)
        m = samplers.random_module(rnd, bounds)
        payload = {"module": serialize.module_to_json(m)}
        try:
            res = modules.projective_resolution(m, max_len=1)
        except ValueError:
            report.record(i, "resolution_length", payload)
            report.samples += 1
            continue
        if len(res) > 1:
            report.record(i, "resolution_length", payload)
        if res and kernel_matrix(res[0]).cols != 0:
            report.record(i, "resolution_exactness", payload)
        if res and not FpModule(res[0]).is_isomorphic(m):
            report.record(i, "resolution_cokernel", payload)
        x = samplers.random_free_complex(rnd, bounds)
        t, _ = truncate_le(right, -1, x)
        if not in_aisle(left, 0, t):
            report.record(i, "right_window_in_left_aisle",
                          {"complex": serialize.complex_to_json(x)})
        t2, _ = truncate_le(left, 0, x)
        if not in_aisle(right, 0, t2):
            report.record(i, "left_aisle_in_right_aisle",
                          {"complex": serialize.complex_to_json(x)})
        report.samples += 1
    return report


# -- exactness structures ------------------------------------------------------------

def _suite_exact_structure_axioms(budget, seed, bounds, ex: ExactStructure = None):
    ex = ex or FP_MAX
    report = CheckReport(f"exact_structure_axioms[{ex.config_string()}]",
                         "deflations compose; pulled-back deflations and "
                         "pushed-out inflations stay admissible; carrier "
                         "kernels and cokernels are universal",
                         seed)
    from .exactness import d_cokernel, d_kernel
    for i in range(budget):
        rnd = rng_for(seed, "exax", ex.config_string(), i)
        f = samplers.random_carrier_deflation(ex, rnd, bounds)
        payload = {"deflation": serialize.morphism_to_json(f)}
        if not is_deflation(f, ex):
            report.record(i, "corestriction_deflates", payload)
            report.samples += 1
            continue
        # a second deflation out of f's target, to compose
        follow = samplers.random_morphism(rnd, f.target, f.target)
        _, h, _ = modules.corestrict_to_image(follow)
        if is_deflation(h, ex) and not is_deflation(modules.compose(h, f), ex):
            report.record(i, "composition_of_deflations", payload)
        t = samplers.random_morphism(
            rnd, samplers.random_carrier_module(ex, rnd, bounds), f.target)
        p, leg_f, leg_t = carrier_pullback(f, t, ex)
        if not is_deflation(leg_t, ex):
            report.record(i, "pullback_deflation", payload)
        k_mod, k_incl = modules.kernel(f)
        if is_inflation(k_incl, ex):
            q, leg_a, leg_b = carrier_pushout(
                k_incl, samplers.random_morphism(rnd, k_mod, f.source), ex)
            if not is_inflation(leg_b, ex):
                report.record(i, "pushout_inflation", payload)
        # universal properties of the carrier kernel and cokernel
        g = samplers.random_carrier_morphism(ex, rnd, bounds)
        gk, gk_incl, protocol = d_kernel(g, ex)
        probe = samplers.random_morphism(
            rnd, samplers.random_carrier_module(ex, rnd, bounds), gk)
        j = modules.compose(gk_incl, probe)
        pi, lifted = protocol(j)
        if not modules.morphism_equal(modules.compose(gk_incl, lifted),
                                      modules.compose(j, pi)):
            report.record(i, "kernel_cover_protocol", payload)
        gc, gc_proj, coprotocol = d_cokernel(g, ex)
        coprobe = modules.compose(
            samplers.random_morphism(rnd, gc,
                                     samplers.random_carrier_module(ex, rnd, bounds)),
            gc_proj)
        iota, descended = coprotocol(coprobe)
        if not modules.morphism_equal(modules.compose(descended, gc_proj),
                                      modules.compose(iota, coprobe)):
            report.record(i, "cokernel_cover_protocol", payload)
        report.samples += 1
    return report


def _suite_freez_max_equals_split(budget, seed, bounds):
    report = CheckReport("freez_max_equals_split",
                         "on free abelian groups the maximal structure "
                         "coincides with the split one",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "maxsplit", i)
        rows = rnd.randint(1, max(bounds.max_rank, 1))
        cols = rnd.randint(1, max(bounds.max_rank, 1))
        f = FpMorphism.from_generator_matrix(
            FpModule.free(Z, cols), FpModule.free(Z, rows),
            samplers.random_matrix(rnd, rows, cols, bounds.max_entry))
        payload = {"morphism": serialize.morphism_to_json(f)}
        if is_deflation(f, FREE_MAX) != is_deflation(f, FREE_SPLIT):
            report.record(i, "deflation_predicates_agree", payload)
        if is_inflation(f, FREE_MAX) != is_inflation(f, FREE_SPLIT):
            report.record(i, "inflation_predicates_agree", payload)
        report.samples += 1
    return report


def _suite_acyclicity_transfer(budget, seed, bounds):
    report = CheckReport("acyclicity_transfer",
                         "bounded free complexes: exact over fp modules iff "
                         "contractible iff split-acyclic",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "acyclic", i)
        if rnd.random() < 0.5:
            c = samplers.random_exact_free_complex(rnd, bounds)
        else:
            c = samplers.random_free_complex(rnd, bounds)
        payload = {"complex": serialize.complex_to_json(c)}
        exact = is_exact(c)
        contractible = is_contractible(c) is not None
        split_acyclic = bool(is_acyclic_wrt(c, FREE_SPLIT))
        if not (exact == contractible == split_acyclic):
            report.record(i, "three_procedures_agree", payload)
        report.samples += 1
    return report


# -- t-structures --------------------------------------------------------------------

def _tstructure_suite(name: str, spec: TStructureSpec):
    def run(budget, seed, bounds):
        report = check_tstructure_axioms(spec, budget, seed, bounds)
        report.name = name
        return report

    return run


def _suite_heart_identification(budget, seed, bounds):
    report = CheckReport("heart_identification",
                         "module -> left-heart object -> module is the identity "
                         "on invariants; morphism sets biject",
                         seed)
    left = TStructureSpec.left(FREE_SPLIT)
    for i in range(budget):
        rnd = rng_for(seed, "heart-id", i)
        m = samplers.random_module(rnd, bounds)
        payload = {"module": serialize.module_to_json(m)}
        h = module_to_left_heart(left, m)
        if not heart_membership(left, h.representative):
            report.record(i, "representative_in_heart", payload)
        back = left_heart_to_module(left, h.representative)
        if not back.is_isomorphic(m):
            report.record(i, "round_trip_invariants", payload)
        # morphism sets: group isomorphism plus full and faithful transport
        n = samplers.random_module(rnd, bounds)
        hn = module_to_left_heart(left, n)
        mr = modules.reduce_presentation(m)
        nr = modules.reduce_presentation(n)
        hom = modules.hom_group(mr, nr)
        chain_homs = derived_hom(h.representative, hn.representative, 0)
        if not chain_homs.is_isomorphic(hom.module):
            report.record(i, "hom_group_isomorphism", payload)
        for j in range(hom.module.generators):
            psi = hom.generator(j)
            lifted = module_map_to_left_heart_map(psi, h.representative,
                                                  hn.representative)
            if not modules.morphism_equal(left_heart_map_to_module_map(lifted), psi):
                report.record(i, "fullness_round_trip", payload)
                break
            null = is_nullhomotopic(lifted)
            psi_zero = modules.is_zero_morphism(psi)
            if (null is not None) != psi_zero:
                report.record(i, "faithfulness", payload)
                break
        report.samples += 1
    return report


def _suite_heart_intersection(budget, seed, bounds):
    report = CheckReport("heart_intersection",
                         "objects of both hearts normalise to free stalks; free "
                         "stalks live in both hearts; no first extensions "
                         "against the base",
                         seed)
    left = TStructureSpec.left(FREE_SPLIT)
    right = TStructureSpec.right(FREE_SPLIT)
    for i in range(budget):
        rnd = rng_for(seed, "intersection", i)
        c, rank = samplers.random_disguised_free_stalk(rnd, bounds)
        payload = {"complex": serialize.complex_to_json(c), "rank": rank}
        if not (heart_membership(left, c) and heart_membership(right, c)):
            report.record(i, "disguised_stalk_membership", payload)
        else:
            nf = intersection_normal_form(right, left, c)
            if nf is None or nf.invariant_data() != (rank, ()):
                report.record(i, "normal_form_recovers_rank", payload)
        stalk = free_complex(Z, 0, [], first_rank=rnd.randint(0, bounds.max_rank))
        if not (heart_membership(left, stalk) and heart_membership(right, stalk)):
            report.record(i, "free_stalk_membership", payload)
        f_rank = rnd.randint(0, bounds.max_rank)
        f_stalk = free_complex(Z, 0, [], first_rank=f_rank)
        z_stalk = free_complex(Z, 0, [], first_rank=1)
        if not derived_hom(f_stalk, z_stalk, 1).is_zero_module():
            report.record(i, "no_first_extensions", payload)
        report.samples += 1
    return report


def _suite_hrs_star_consistency(budget, seed, bounds):
    report = CheckReport("hrs_star_consistency",
                         "the one-step star criterion agrees with the tilted "
                         "aisle; tilted hearts split into a shifted free part "
                         "and a torsion part",
                         seed)
    hrs = TStructureSpec.hrs_tilt()
    nat = TStructureSpec.natural()
    for i in range(budget):
        rnd = rng_for(seed, "hrs-star", i)
        x = samplers.random_fp_complex(rnd, bounds)
        payload = {"complex": serialize.complex_to_json(x)}
        star = star_membership(x, ClassTag.TORSION, 1) is not None
        tilted = in_aisle(hrs, 0, x)
        if star != tilted:
            report.record(i, "star_agrees_with_tilt", payload)
        # a heart object of the tilt and its torsion-pair decomposition
        h = t_cohomology(hrs, 0, x)
        if not heart_membership(hrs, h):
            report.record(i, "t_cohomology_in_heart",
                          {"complex": serialize.complex_to_json(h)})
            report.samples += 1
            continue
        hm1 = cohomology(h, -1)
        h0 = cohomology(h, 0)
        if not (hm1.is_free() and h0.is_torsion()):
            report.record(i, "tilted_pair_classes", payload)
        a, counit = truncate_le(nat, -1, h)
        b, unit = truncate_ge(nat, 0, h)
        if not triangle_is_distinguished(counit, unit, "derived"):
            report.record(i, "tilted_pair_sequence", payload)
        if not derived_hom(free_resolution(a), free_resolution(b), 0).is_zero_module():
            report.record(i, "tilted_pair_orthogonality", payload)
        report.samples += 1
    return report


def _suite_star_trivial_class(budget, seed, bounds):
    report = CheckReport("star_trivial_class",
                         "two-step star decompositions exist over the class of "
                         "all modules, with distinguished peeling triangles",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "star2", i)
        x = samplers.random_fp_complex(rnd, bounds)
        payload = {"complex": serialize.complex_to_json(x)}
        aisle = all(cohomology(x, j).is_zero_module() for j in range(1, x.hi + 1))
        dec = star_membership(x, ClassTag.ALL_FP, 2)
        if aisle != (dec is not None):
            report.record(i, "membership_criterion", payload)
        if dec is not None:
            for tri in dec.triangles:
                if not triangle_is_distinguished(tri.sub_map, tri.quot_map, "derived"):
                    report.record(i, "peeling_triangles", payload)
                    break
        report.samples += 1
    return report


# -- effaceable functors -----------------------------------------------------------

def _freyd_ex_for(carrier_name: str) -> ExactStructure:
    return {"freez": FREE_SPLIT, "fpz": FP_MAX, "torsion": TOR_INH}[carrier_name]


def _random_effaceable(ex, rnd, bounds) -> FreydObject:
    return FreydObject(ex, samplers.random_carrier_deflation(ex, rnd, bounds))


def _suite_serre_effaceable(carrier_name: str):
    ex = _freyd_ex_for(carrier_name)

    def run(budget, seed, bounds):
        from .freyd import serre_closure_check
        report = serre_closure_check(ex, budget, seed, bounds)
        report.name = f"serre_effaceable_{carrier_name}"
        return report

    return run


def _suite_freyd_pointwise_exactness(budget, seed, bounds):
    report = CheckReport("freyd_pointwise_exactness",
                         "sampled conflations of functors evaluate to short "
                         "exact sequences of abelian groups at probe objects",
                         seed)
    ex = FP_MAX
    probes = [FpModule.free(Z, 1), FpModule.free(Z, 2), FpModule.cyclic(Z, 4)]
    for i in range(budget):
        rnd = rng_for(seed, "pointwise", i)
        t = _random_effaceable(ex, rnd, bounds)
        extra_src = samplers.random_module(rnd, bounds)
        extra = samplers.random_morphism(rnd, extra_src, t.generators)
        rel_sum, rel_inj, rel_proj = modules.direct_sum([t.relations, extra_src])
        bigger = modules.add_morphisms(
            modules.compose(t.carrier, rel_proj[0]),
            modules.compose(extra, rel_proj[1]))
        quotient = FreydObject(ex, bigger)
        pi = FreydMorphism(t, quotient, FpMorphism.identity(t.generators), rel_inj[0])
        sub, incl = freyd_kernel(pi)
        payload = {"carrier": serialize.morphism_to_json(t.carrier)}
        for probe in probes:
            ev_t = evaluate(t, probe)
            ev_q = evaluate(quotient, probe)
            ev_s = evaluate(sub, probe)
            incl_map = evaluate_map(incl, probe, ev_s, ev_t)
            pi_map = evaluate_map(pi, probe, ev_t, ev_q)
            if not modules.is_mono(incl_map):
                report.record(i, "pointwise_mono", payload)
                break
            if not modules.is_epi(pi_map):
                report.record(i, "pointwise_epi", payload)
                break
            if not modules.is_zero_morphism(modules.compose(pi_map, incl_map)):
                report.record(i, "pointwise_composite", payload)
                break
            k_mod, k_incl = modules.kernel(pi_map)
            if modules.factor(k_incl, incl_map) is None \
                    or modules.factor(incl_map, k_incl) is None:
                report.record(i, "pointwise_exactness", payload)
                break
        report.samples += 1
    return report


def _suite_auslander_formula(budget, seed, bounds):
    report = CheckReport("auslander_formula",
                         "projection kernel = effaceables; the projection is "
                         "full, faithful and essentially surjective",
                         seed)
    for i in range(budget):
        rnd = rng_for(seed, "auslander", i)
        ex = FREE_SPLIT if rnd.random() < 0.5 else FP_MAX
        # kernel of the projection
        if ex.carrier is Carrier.FREE_Z:
            rows = rnd.randint(1, bounds.max_rank)
            cols = rnd.randint(0, bounds.max_rank)
            f = FreydObject.from_presentation_matrix(
                ex, samplers.random_matrix(rnd, rows, cols, bounds.max_entry))
        else:
            src = samplers.random_module(rnd, bounds)
            tgt = samplers.random_module(rnd, bounds)
            f = FreydObject(ex, samplers.random_morphism(rnd, src, tgt))
        payload = {"carrier": serialize.morphism_to_json(f.carrier)}
        if auslander_project(f).is_zero_module() != is_effaceable(f):
            report.record(i, "kernel_of_projection", payload)
        # effaceability is presentation independent: disguise by isomorphisms
        if f.ex.carrier is Carrier.FREE_Z:
            u = samplers.random_unimodular(rnd, f.carrier.target.generators)
            v = samplers.random_unimodular(rnd, f.carrier.source.generators)
            disguised = FreydObject.from_presentation_matrix(
                f.ex, u * f.carrier.gen * v)
            if is_effaceable(disguised) != is_effaceable(f):
                report.record(i, "presentation_independence", payload)
        # essential surjectivity via the module's own presentation
        m = samplers.random_module(rnd, bounds)
        pres = FreydObject.from_presentation_matrix(
            FREE_SPLIT, modules.reduce_presentation(m).presentation)
        if not auslander_project(pres).is_isomorphic(m):
            report.record(i, "essential_surjectivity",
                          {"module": serialize.module_to_json(m)})
        # fullness: a module morphism lifts through presentations
        n = samplers.random_module(rnd, bounds)
        pres_n = FreydObject.from_presentation_matrix(
            FREE_SPLIT, modules.reduce_presentation(n).presentation)
        hom = modules.hom_group(modules.reduce_presentation(m),
                                modules.reduce_presentation(n))
        if hom.module.generators:
            psi = hom.element([rnd.randint(-2, 2)
                               for _ in range(hom.module.generators)])
        else:
            psi = FpMorphism.zero(modules.reduce_presentation(m),
                                  modules.reduce_presentation(n))
        lift_gen = FpMorphism.from_generator_matrix(
            pres.generators, pres_n.generators, psi.gen)
        eta = FreydMorphism.from_generator(pres, pres_n, lift_gen)
        frac = Fraction.from_morphism(eta)
        if not modules.morphism_equal(project_fraction(frac), psi):
            report.record(i, "fullness", {"module": serialize.module_to_json(m)})
        # faithfulness: projection vanishing iff factoring through effaceables
        if modules.is_zero_morphism(project_morphism(eta)) \
                != factors_through_effaceable(eta):
            report.record(i, "faithfulness", payload)
        # fraction calculus: composite projections compose
        eff = FreydObject.from_presentation_matrix(
            FREE_SPLIT, IntMatrix.identity(Z, rnd.randint(1, 2)))
        a = refine_fraction(Fraction.from_morphism(FreydMorphism.identity(pres)), eff)
        b = Fraction.from_morphism(FreydMorphism.identity(pres))
        comp = fraction_compose(b, a)
        lhs = project_fraction(comp)
        rhs = modules.compose(project_fraction(b), project_fraction(a))
        if not modules.morphism_equal(lhs, rhs):
            report.record(i, "fraction_functoriality", payload)
        report.samples += 1
    return report


def _suite_right_filtering(budget, seed, bounds):
    report = CheckReport("right_filtering",
                         "maps into effaceables factor as a pointwise epi "
                         "onto an effaceable followed by a map",
                         seed)
    ex = FP_MAX
    for i in range(budget):
        rnd = rng_for(seed, "filter", i)
        a = _random_effaceable(ex, rnd, bounds)
        src_mod = samplers.random_module(rnd, bounds)
        rel_mod = samplers.random_module(rnd, bounds)
        u = FreydObject(ex, samplers.random_morphism(rnd, rel_mod, src_mod))
        gen = samplers.random_morphism(rnd, u.generators, a.generators)
        try:
            eta = FreydMorphism.from_generator(u, a, gen)
        except ValueError:
            report.samples += 1
            continue
        pi, g, mid = right_filter_factor(eta)
        payload = {"carrier": serialize.morphism_to_json(u.carrier)}
        if not is_effaceable(mid):
            report.record(i, "intermediate_effaceable", payload)
        if not freyd_equal(freyd_compose(g, pi), eta):
            report.record(i, "factorisation_identity", payload)
        c, _ = freyd_cokernel(pi)
        if not c.is_zero_functor():
            report.record(i, "factor_pointwise_epi", payload)
        report.samples += 1
    return report


def _suite_tilting_class_laws(budget, seed, bounds):
    report = CheckReport("tilting_class_laws",
                         "the trivial class satisfies the one-step tilting "
                         "conditions; the free class satisfies the cotilting duals",
                         seed)
    sub = tilting_class_check(ClassTag.ALL_FP, 1, budget, seed, bounds)
    for f in sub.failures:
        report.failures.append(f)
    dual = tilting_class_check(ClassTag.FREE, 1, budget, seed, bounds,
                               mode="cotilting")
    for f in dual.failures:
        report.failures.append(f)
    report.samples = sub.samples + dual.samples
    return report


# -- negative controls ---------------------------------------------------------------

def _suite_negative_corrupted(budget, seed, bounds):
    spec = TStructureSpec(TVariant.NATURAL, corrupt=True)
    report = check_tstructure_axioms(spec, budget, seed, bounds)
    report.name = "negative_corrupted_tstructure"
    report.law = ("designed-to-fail control: a corrupted truncation must "
                  "produce axiom failures")
    return report


def _suite_corrupted_detected(budget, seed, bounds):
    report = CheckReport("corrupted_tstructure_detected",
                         "the corrupted-truncation control is caught by the "
                         "axiom checker",
                         seed)
    spec = TStructureSpec(TVariant.NATURAL, corrupt=True)
    sub = check_tstructure_axioms(spec, budget, seed, bounds)
    report.samples = sub.samples
    if sub.passed:
        report.record(0, "vacuous_checker", {})
    return report


def _suite_cogeneration_control(budget, seed, bounds):
    report = CheckReport("cogeneration_negative_control",
                         "the free class fails cogeneration with a torsion "
                         "witness (a vacuous pass is an error)",
                         seed)
    sub = tilting_class_check(ClassTag.FREE, 1, budget, seed, bounds)
    report.samples = sub.samples
    cogeneration_failures = [f for f in sub.failures if f.check == "cogeneration"]
    if not cogeneration_failures:
        report.record(0, "vacuous_checker", {})
    z2 = FpModule.cyclic(Z, 2)
    if cogeneration_witness(ClassTag.FREE, z2) is not None:
        report.record(0, "witness_embedded_into_free", {})
    if not modules.hom_group(z2, FpModule.free(Z, 2)).module.is_zero_module():
        report.record(0, "witness_hom_group_nonzero", {})
    return report


# -- registry ---------------------------------------------------------------------------

def _tstructure_defs():
    return [
        ("tstructure_axioms_natural", TStructureSpec.natural()),
        ("tstructure_axioms_left", TStructureSpec.left(FREE_SPLIT)),
        ("tstructure_axioms_right", TStructureSpec.right(FREE_SPLIT)),
        ("tstructure_axioms_hrs", TStructureSpec.hrs_tilt()),
    ]


def build_registry() -> dict[str, SuiteDef]:
    defs = [
        SuiteDef("snf_identities",
                 "U*M*V = D with a divisibility chain and unimodular transforms",
                 _timed(_suite_snf_identities)),
        SuiteDef("snf_polynomials",
                 "normal-form identities over exact rational polynomials",
                 _timed(_suite_snf_polynomials)),
        SuiteDef("solve_kernel_duality",
                 "exact solving and kernel lattices agree in both directions",
                 _timed(_suite_solve_kernel_duality)),
        SuiteDef("fp_universal_properties",
                 "kernel and cokernel universal properties with uniqueness",
                 _timed(_suite_fp_universal_properties)),
        SuiteDef("torsion_pair_axioms",
                 "finite/free orthogonality and exact decomposition sequences",
                 _timed(_suite_torsion_pair)),
        SuiteDef("global_dimension",
                 "resolutions stop at length one; right window inside left aisle",
                 _timed(_suite_global_dimension)),
        SuiteDef("exact_structure_axioms",
                 "deflation composition and pullback stability on the carrier",
                 _timed(_suite_exact_structure_axioms)),
        SuiteDef("freez_max_equals_split",
                 "maximal equals split on free abelian groups",
                 _timed(_suite_freez_max_equals_split)),
        SuiteDef("acyclicity_transfer",
                 "exactness, contractibility, split acyclicity coincide",
                 _timed(_suite_acyclicity_transfer)),
        SuiteDef("heart_identification",
                 "left heart is the module category, fully faithfully",
                 _timed(_suite_heart_identification)),
        SuiteDef("heart_intersection",
                 "both hearts meet exactly in the free stalks",
                 _timed(_suite_heart_intersection)),
        SuiteDef("hrs_star_consistency",
                 "one-step star equals the tilted aisle; hearts decompose",
                 _timed(_suite_hrs_star_consistency)),
        SuiteDef("star_trivial_class",
                 "two-step star decomposition over the trivial class",
                 _timed(_suite_star_trivial_class)),
        SuiteDef("freyd_pointwise_exactness",
                 "functor conflations are pointwise short exact",
                 _timed(_suite_freyd_pointwise_exactness)),
        SuiteDef("auslander_formula",
                 "the cokernel projection kills exactly the effaceables and is "
                 "an equivalence onto the modules",
                 _timed(_suite_auslander_formula)),
        SuiteDef("right_filtering",
                 "maps into effaceables factor through effaceable quotients",
                 _timed(_suite_right_filtering)),
        SuiteDef("tilting_class_laws",
                 "trivial class tilts; free class cotilts",
                 _timed(_suite_tilting_class_laws)),
        SuiteDef("cogeneration_negative_control",
                 "free-class cogeneration fails with a torsion witness",
                 _timed(_suite_cogeneration_control)),
        SuiteDef("corrupted_tstructure_detected",
                 "the corrupted control is detected",
                 _timed(_suite_corrupted_detected)),
        SuiteDef("negative_corrupted_tstructure",
                 "designed-to-fail corrupted truncation",
                 _timed(_suite_negative_corrupted),
                 negative_control=True),
    ]
    for name, spec in _tstructure_defs():
        defs.append(SuiteDef(
            name, "aisle shift closure, orthogonality, approximating triangles",
            _timed(_tstructure_suite(name, spec))))
    for carrier_name in ("freez", "fpz", "torsion"):
        defs.append(SuiteDef(
            f"serre_effaceable_{carrier_name}",
            "effaceables form a Serre subcategory on this carrier",
            _timed(_suite_serre_effaceable(carrier_name))))
    return {d.name: d for d in defs}


REGISTRY = build_registry()


def default_suite_names() -> list[str]:
    return sorted(name for name, d in REGISTRY.items() if not d.negative_control)
