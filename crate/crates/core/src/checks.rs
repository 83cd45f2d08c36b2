//! Self-contained invariant suites behind the `check` command.
//!
//! Every check is deterministic and returns a pass/fail outcome with a
//! short detail string.  The fast level runs exhaustive suites up to rank
//! 3; the full level adds the rank-4 worked examples, the rank-5 longest
//! element, and the exact-matrix golden data.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::clifford::{determinant, CliffordElement};
use crate::error::Error;
use crate::matrix::{bruhat_perm, factor, product_from, transversal_z7, zeta, p_values, RationalMatrix, TransversalPolynomials};
use crate::scalar::ScaledDyadic;
use crate::spin::{
    coset, lift_all_plus, lift_word, n_of_z_in_coset, orbit_decomposition, SpinWeylElement,
};
use crate::strata::{
    click, components_total, enumerate_d2_preancestries, enumerate_dim0, skeleton_stats, D2Type,
    StrataGraph,
};
use crate::words::{all_permutations, Permutation, ReducedWord};

/// How much of the suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckLevel {
    Fast,
    Full,
}

impl FromStr for CheckLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fast" => Ok(CheckLevel::Fast),
            "full" => Ok(CheckLevel::Full),
            other => Err(Error::Parse(format!("unknown check level {other:?}"))),
        }
    }
}

/// Result of a single named check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, result: Result<String, String>) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome { name: name.to_string(), passed: true, detail },
        Err(detail) => CheckOutcome { name: name.to_string(), passed: false, detail },
    }
}

/// Runs the selected suites in a fixed order.
pub fn run_checks(level: CheckLevel) -> Vec<CheckOutcome> {
    let mut outcomes = vec![
        outcome("algebra-relations", algebra_relations()),
        outcome("braid-lift-independence", braid_lift_independence(3)),
        outcome("stratum-counting-small", stratum_counting_small()),
        outcome("orbit-structure-small", orbit_structure_small()),
        outcome("click-moves-small", click_moves_small()),
        outcome("component-totals-small", component_totals_small()),
        outcome("matrix-factorization-small", matrix_factorization_small()),
        outcome("rotations-exact", rotations_exact()),
    ];
    if level == CheckLevel::Full {
        outcomes.push(outcome("golden-rank4-orbits", golden_rank4_orbits()));
        outcomes.push(outcome("golden-rank4-skeleta", golden_rank4_skeleta()));
        outcomes.push(outcome("golden-rank5-longest", golden_rank5_longest()));
        outcomes.push(outcome("component-totals-long", component_totals_long()));
        outcomes.push(outcome("golden-matrix", golden_matrix()));
        outcomes.push(outcome("transversal-section", transversal_section()));
    }
    outcomes
}

fn canonical_words(max_rank: usize) -> Vec<ReducedWord> {
    let mut words = Vec::new();
    for n in 1..=max_rank {
        for sigma in all_permutations(n + 1) {
            if !sigma.is_identity() {
                words.push(sigma.canonical_word());
            }
        }
    }
    words
}

fn mat_mul(a: &[Vec<ScaledDyadic>], b: &[Vec<ScaledDyadic>]) -> Vec<Vec<ScaledDyadic>> {
    let size = a.len();
    (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    (0..size).fold(ScaledDyadic::zero(), |acc, k| acc + a[r][k] * b[k][c])
                })
                .collect()
        })
        .collect()
}

fn is_identity_matrix(m: &[Vec<ScaledDyadic>]) -> bool {
    m.iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(c, v)| {
            *v == if r == c { ScaledDyadic::one() } else { ScaledDyadic::zero() }
        })
    })
}

fn algebra_relations() -> Result<String, String> {
    let mut cases = 0usize;
    for n in 1..=3usize {
        for i in 1..=n {
            let acute = SpinWeylElement::acute(n, i, 1).map_err(|e| e.to_string())?;
            let grave = SpinWeylElement::acute(n, i, -1).map_err(|e| e.to_string())?;
            if acute.mul(&grave).unwrap() != SpinWeylElement::one(n) {
                return Err(format!("acute_{i} times its inverse is not 1 at rank {n}"));
            }
            let mut power = SpinWeylElement::one(n);
            for _ in 0..4 {
                power = power.mul(&acute).unwrap();
            }
            if power != SpinWeylElement::minus_one(n) {
                return Err(format!("acute_{i}^4 is not -1 at rank {n}"));
            }
            if power.mul(&power).unwrap() != SpinWeylElement::one(n) {
                return Err(format!("acute_{i}^8 is not 1 at rank {n}"));
            }
            cases += 3;
        }
        // The projection is multiplicative and lands in rotation matrices.
        for w in canonical_words(n) {
            if w.rank() != n {
                continue;
            }
            let z = lift_all_plus(&w);
            let m = z.element().pi_matrix().map_err(|e| e.to_string())?;
            let mt: Vec<Vec<ScaledDyadic>> = (0..m.len())
                .map(|r| (0..m.len()).map(|c| m[c][r]).collect())
                .collect();
            if !is_identity_matrix(&mat_mul(&m, &mt)) {
                return Err(format!("projection of the all-plus lift of ({w}) is not orthogonal"));
            }
            if determinant(&m) != ScaledDyadic::one() {
                return Err(format!("projection of the all-plus lift of ({w}) has determinant != 1"));
            }
            let factors: Result<Vec<_>, _> = w
                .letters()
                .iter()
                .map(|&i| CliffordElement::acute(n, i, 1))
                .collect();
            let factors = factors.map_err(|e| e.to_string())?;
            let mut prod = CliffordElement::one(n).pi_matrix().unwrap();
            for fac in &factors {
                prod = mat_mul(&prod, &fac.pi_matrix().unwrap());
            }
            if prod != m {
                return Err(format!("projection is not multiplicative on ({w})"));
            }
            cases += 3;
        }
    }
    Ok(format!("{cases} relation cases at ranks 1..=3"))
}

fn braid_lift_independence(max_rank: usize) -> Result<String, String> {
    let mut words_checked = 0usize;
    for n in 1..=max_rank {
        for sigma in all_permutations(n + 1) {
            let words = sigma.all_reduced_words();
            let lifts: Vec<SpinWeylElement> = words
                .iter()
                .map(|letters| lift_all_plus(&ReducedWord::new(letters.clone(), n).unwrap()))
                .collect();
            if lifts.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("all-plus lifts of {sigma} differ across reduced words"));
            }
            words_checked += words.len();
        }
    }
    Ok(format!("{words_checked} reduced words across ranks 1..={max_rank}"))
}

fn stratum_counting_small() -> Result<String, String> {
    let mut buckets_checked = 0usize;
    for w in canonical_words(3) {
        let elements = coset(&w);
        let buckets = enumerate_dim0(&w);
        let mut total = 0u64;
        for z in &elements {
            let counted = buckets.get(z).map_or(0, Vec::len) as u64;
            let formula = n_of_z_in_coset(&w, &elements, z).map_err(|e| e.to_string())?;
            if counted != formula {
                return Err(format!(
                    "bucket size {counted} != closed form {formula} for a lift of ({w})"
                ));
            }
            total += formula;
            buckets_checked += 1;
        }
        if total != 1 << w.len() {
            return Err(format!("stratum counts of ({w}) sum to {total}, not 2^length"));
        }
    }
    Ok(format!("{buckets_checked} lift values across all rank<=3 permutations"))
}

fn orbit_structure_small() -> Result<String, String> {
    let mut orbits_checked = 0usize;
    for w in canonical_words(3) {
        let n = w.rank();
        let c = w.perm().cycle_count();
        let b = w.perm().block_set().len();
        let orbits = orbit_decomposition(&w);
        let coset_size: usize = orbits.iter().map(|o| o.members.len()).sum();
        if coset_size != 1 << (n + 1) {
            return Err(format!("orbits of ({w}) cover {coset_size} elements"));
        }
        for orbit in &orbits {
            let expected = if orbit.c_anti == 1 { 1 << (n - c + 2) } else { 1 << (n - c + 1) };
            if orbit.members.len() != expected {
                return Err(format!(
                    "orbit size {} of ({w}) violates the 2^(n-c+1)/2^(n-c+2) law",
                    orbit.members.len()
                ));
            }
            if orbit.c_anti == 1 && !orbit.re_value.is_zero() {
                return Err(format!("self-negative orbit of ({w}) has nonzero scalar part"));
            }
            orbits_checked += 1;
        }
        // Paired counts: a lift and its negative share 2^(l-n+b) strata.
        let elements = coset(&w);
        for z in &elements {
            let plus = n_of_z_in_coset(&w, &elements, z).unwrap();
            let minus = n_of_z_in_coset(&w, &elements, &z.neg()).unwrap();
            if plus + minus != 0 && plus + minus != 1u64 << (w.len() + b - n) {
                return Err(format!("paired stratum counts of ({w}) miss 2^(l-n+b)"));
            }
        }
    }
    Ok(format!("{orbits_checked} orbits across all rank<=3 permutations"))
}

fn click_moves_small() -> Result<String, String> {
    let mut clicks_checked = 0usize;
    for w in canonical_words(3) {
        let l = w.len();
        for bits in 0u32..1 << l {
            let signs: Vec<i8> =
                (1..=l).map(|k| if bits >> (l - k) & 1 == 1 { 1 } else { -1 }).collect();
            let vertex = crate::strata::AncestryVector::new(signs.clone()).unwrap();
            let lift = lift_word(&w, &signs).unwrap();
            for face in w.faces() {
                match click(&vertex, &face) {
                    Ok(clicked) => {
                        let back = click(&clicked, &face).map_err(|e| e.to_string())?;
                        if back != vertex {
                            return Err(format!("click at ({},{}) of ({w}) is not an involution", face.k1, face.k2));
                        }
                        if lift_word(&w, clicked.entries()).unwrap() != lift {
                            return Err(format!("click at ({},{}) of ({w}) changes the lift", face.k1, face.k2));
                        }
                        clicks_checked += 1;
                    }
                    Err(Error::NotClickable) => {}
                    Err(e) => return Err(format!("unexpected click error: {e}")),
                }
            }
        }
    }
    Ok(format!("{clicks_checked} click moves across all rank<=3 canonical words"))
}

fn component_totals_small() -> Result<String, String> {
    let expected = [(1usize, 2usize), (2, 6), (3, 20)];
    for (n, total) in expected {
        let eta = Permutation::longest(n + 1);
        let got = components_total(&eta.canonical_word());
        if got != total {
            return Err(format!("rank {n} longest element has {got} components, expected {total}"));
        }
    }
    // Word independence of the total at small ranks.
    for n in 1..=3usize {
        for sigma in all_permutations(n + 1) {
            let totals: Vec<usize> = sigma
                .all_reduced_words()
                .iter()
                .map(|letters| components_total(&ReducedWord::new(letters.clone(), n).unwrap()))
                .collect();
            if totals.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("component total of {sigma} depends on the reduced word"));
            }
        }
    }
    Ok("totals 2/6/20 and word independence at ranks 1..=3".to_string())
}

fn matrix_factorization_small() -> Result<String, String> {
    let mut words_checked = 0usize;
    for w in canonical_words(3) {
        let t: Vec<BigRational> = (0..w.len())
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign * (k as i64 + 2)), BigInt::from(3))
            })
            .collect();
        let m = product_from(&w, &t).map_err(|e| e.to_string())?;
        let recovered = factor(&w, &m).map_err(|e| e.to_string())?;
        if recovered != t {
            return Err(format!("factorization along ({w}) does not invert the product"));
        }
        if factor(&w, &RationalMatrix::identity(w.rank() + 1)) != Err(Error::NotFactorizable) {
            return Err(format!("identity matrix wrongly factors along ({w})"));
        }
        words_checked += 1;
    }
    Ok(format!("{words_checked} canonical words round-tripped"))
}

fn rotations_exact() -> Result<String, String> {
    let rationals = ["0", "1", "-1/2", "7/5"];
    for n in 1..=4usize {
        for i in 1..=n {
            for t in rationals {
                let t = crate::matrix::parse_rational(t).unwrap();
                let z = zeta(n, i, &t).map_err(|e| e.to_string())?;
                if z.mul(&z.transpose()).unwrap() != RationalMatrix::identity(n + 1) {
                    return Err(format!("rotation ({n},{i}) is not orthogonal"));
                }
                if z.determinant().unwrap() != BigRational::one() {
                    return Err(format!("rotation ({n},{i}) has determinant != 1"));
                }
            }
        }
    }
    Ok("rotations orthogonal with determinant 1 on a rational sample".to_string())
}

fn word_45132() -> ReducedWord {
    ReducedWord::new(vec![2, 3, 1, 2, 4, 3, 2], 4).unwrap()
}

fn eta5_word() -> ReducedWord {
    ReducedWord::new(vec![1, 2, 1, 3, 2, 1, 4, 3, 2, 1], 4).unwrap()
}

/// Orbit table as a sorted multiset of (size, stratum count, c_anti).
fn orbit_table(word: &ReducedWord) -> Vec<(usize, u64, u8)> {
    let mut table: Vec<(usize, u64, u8)> = orbit_decomposition(word)
        .iter()
        .map(|o| (o.members.len(), o.n_value.unwrap(), o.c_anti))
        .collect();
    table.sort_unstable();
    table
}

fn golden_rank4_orbits() -> Result<String, String> {
    let w = word_45132();
    let table = orbit_table(&w);
    let expected = vec![(8usize, 2u64, 0u8), (8, 6, 0), (16, 4, 1)];
    if table != expected {
        return Err(format!("orbit table of ({w}) is {table:?}"));
    }
    // Scalar parts: -2^(-3/2) on the 2-stratum orbit, 0 on the split one,
    // +2^(-3/2) on the 6-stratum orbit.
    for orbit in orbit_decomposition(&w) {
        let expected_re = match orbit.n_value.unwrap() {
            2 => ScaledDyadic::new(-1, 3),
            4 => ScaledDyadic::zero(),
            6 => ScaledDyadic::new(1, 3),
            other => return Err(format!("unexpected stratum count {other} for ({w})")),
        };
        if orbit.re_value != expected_re {
            return Err(format!("scalar part {} unexpected for ({w})", orbit.re_value));
        }
    }
    let w2 = Permutation::parse("43521").unwrap().canonical_word();
    let table2 = orbit_table(&w2);
    let expected2 = vec![(16usize, 6u64, 0u8), (16, 10, 0)];
    if table2 != expected2 {
        return Err(format!("orbit table of ({w2}) is {table2:?}"));
    }
    Ok("orbit tables 8/16/8 and 16/16 with matching scalar parts".to_string())
}

fn golden_rank4_skeleta() -> Result<String, String> {
    let w = word_45132();
    let base = lift_all_plus(&w);
    let ahat1 = SpinWeylElement::ahat(4, 1).unwrap();
    let shapes = [
        (ahat1.mul(&base).unwrap(), (4usize, 3usize, 1usize)),
        (base.neg(), (6, 6, 1)),
        (base.clone(), (2, 0, 2)),
    ];
    for (z, (v, e, c)) in &shapes {
        let g = StrataGraph::build(&w, z).map_err(|e| e.to_string())?;
        let got = (g.vertices.len(), g.edges.len(), g.components());
        if got != (*v, *e, *c) {
            return Err(format!("skeleton shape {got:?}, expected ({v},{e},{c})"));
        }
    }
    let g = StrataGraph::build(&w, &base).unwrap();
    if g.isolated_count() != 2 {
        return Err("all-plus lift should have 2 isolated vertices".to_string());
    }
    let d2 = enumerate_d2_preancestries(&w);
    if d2.len() != 1 || d2[0].positions != [1, 2, 6, 7] || d2[0].d2_type != D2Type::II {
        return Err(format!("quadruple patterns of ({w}) are {d2:?}"));
    }
    let w2 = Permutation::parse("43521").unwrap().canonical_word();
    let iso = StrataGraph::build(&w2, &lift_all_plus(&w2)).unwrap().isolated_count();
    if iso != 1 {
        return Err(format!("all-plus lift of ({w2}) has {iso} isolated vertices, expected 1"));
    }
    Ok("skeleta 4/3/1, 6/6/1, 2/0/2 with the single type-II quadruple".to_string())
}

fn golden_rank5_longest() -> Result<String, String> {
    let w = eta5_word();
    if coset(&w).len() != 32 {
        return Err("lift coset of the rank-4 longest element is not 32 strong".to_string());
    }
    let table = orbit_table(&w);
    let expected =
        vec![(4usize, 24u64, 0u8), (4, 40, 0), (8, 32, 1), (8, 32, 1), (8, 32, 1)];
    if table != expected {
        return Err(format!("orbit table is {table:?}"));
    }
    let stats = skeleton_stats(&w, 1);
    let base = lift_all_plus(&w);
    let ahat1 = SpinWeylElement::ahat(4, 1).unwrap();
    let a_base = ahat1.mul(&base).unwrap();
    let s0 = stats[&base];
    if (s0.vertices, s0.edges, s0.components, s0.isolated) != (32, 48, 3, 2) {
        return Err(format!("all-plus skeleton is {s0:?}"));
    }
    let s1 = stats[&a_base];
    if (s1.vertices, s1.edges, s1.components, s1.isolated) != (40, 72, 1, 0) {
        return Err(format!("ahat-twisted skeleton is {s1:?}"));
    }
    let s2 = stats[&a_base.neg()];
    if (s2.vertices, s2.components) != (24, 2) {
        return Err(format!("negated twisted skeleton is {s2:?}"));
    }
    Ok("orbit table and 32/48, 40/72, 24-vertex skeleta reproduced".to_string())
}

fn component_totals_long() -> Result<String, String> {
    let eta4 = Permutation::longest(5).canonical_word();
    let got4 = components_total(&eta4);
    if got4 != 52 {
        return Err(format!("rank-4 longest element has {got4} components, expected 52"));
    }
    let eta5 = Permutation::longest(6).canonical_word();
    let got5 = crate::strata::components_total_threaded(&eta5, 4);
    if got5 != 96 {
        return Err(format!("rank-5 longest element has {got5} components, expected 96"));
    }
    let w = word_45132();
    if components_total(&w) != 40 {
        return Err("seven-letter rank-4 word total is not 40".to_string());
    }
    let w2 = Permutation::parse("43521").unwrap().canonical_word();
    if components_total(&w2) != 48 {
        return Err("rank-4 eight-letter word total is not 48".to_string());
    }
    Ok("component totals 52, 96, 40, 48".to_string())
}

fn golden_matrix() -> Result<String, String> {
    let w = word_45132();
    let t: Vec<BigRational> = ["1", "2", "-3", "-1/2", "-2", "1", "-2"]
        .iter()
        .map(|s| crate::matrix::parse_rational(s).unwrap())
        .collect();
    let l0 = product_from(&w, &t).unwrap();
    let expected = RationalMatrix::from_csv(
        "1,0,0,0,0\n-3,1,0,0,0\n-3,-3/2,1,0,0\n0,-7,3,1,0\n0,4,-2,-2,1",
    )
    .unwrap();
    if l0 != expected {
        return Err("seven-parameter product disagrees with the stored matrix".to_string());
    }
    if factor(&w, &l0).unwrap() != t {
        return Err("factorization does not recover the stored parameters".to_string());
    }
    match bruhat_perm(&l0) {
        Ok(p) if p == Permutation::parse("45132").unwrap() => {}
        other => return Err(format!("cell detection returned {other:?}")),
    }
    // Membership grid for the rank-3 five-letter word: the product lies in
    // the cell of its permutation exactly when every parameter is nonzero.
    let w3 = ReducedWord::new(vec![1, 2, 3, 1, 2], 3).unwrap();
    let sigma = w3.perm();
    let grid = [-1i64, 0, 1];
    let mut cases = 0usize;
    for a in grid {
        for b in grid {
            for c in grid {
                for d in grid {
                    for e in grid {
                        let t: Vec<BigRational> =
                            [a, b, c, d, e].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
                        let m = product_from(&w3, &t).unwrap();
                        let in_cell = bruhat_perm(&m).unwrap() == sigma;
                        let all_nonzero = [a, b, c, d, e].iter().all(|&v| v != 0);
                        if in_cell != all_nonzero {
                            return Err(format!(
                                "membership mismatch at parameters {:?}",
                                [a, b, c, d, e]
                            ));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("golden factorization plus {cases} membership grid cases"))
}

fn transversal_section() -> Result<String, String> {
    let grid = ["-1", "0", "1", "1/2", "-1/2"];
    for x1 in grid {
        for x2 in grid {
            let x1 = crate::matrix::parse_rational(x1).unwrap();
            let x2 = crate::matrix::parse_rational(x2).unwrap();
            let m = transversal_z7(&x1, &x2);
            if m.mul(&m.transpose()).unwrap() != RationalMatrix::identity(5) {
                return Err("transversal section is not orthogonal".to_string());
            }
            if m.determinant().unwrap() != BigRational::one() {
                return Err("transversal section determinant is not 1".to_string());
            }
        }
    }
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    if p_values(&zero, &zero) != [zero.clone(), zero.clone(), zero.clone()] {
        return Err("sign polynomials do not vanish at the origin".to_string());
    }
    if p_values(&one, &one)[2] != BigRational::from_integer(BigInt::from(-5)) {
        return Err("quartic value at (1,1) is not -5".to_string());
    }
    let polys = TransversalPolynomials::standard();
    let grads = polys.gradients_at_origin();
    if grads[2] != [
        BigRational::from_integer(BigInt::from(-20)),
        BigRational::from_integer(BigInt::from(16)),
    ] {
        return Err("quartic gradient at the origin is wrong".to_string());
    }
    if !polys.gradients_pairwise_independent() {
        return Err("origin gradients are not pairwise independent".to_string());
    }
    Ok("25 orthogonality grid points and polynomial goldens".to_string())
}

/// Summary table keyed by name, mostly for tests and logging.
pub fn outcomes_by_name(outcomes: &[CheckOutcome]) -> BTreeMap<&str, bool> {
    outcomes.iter().map(|o| (o.name.as_str(), o.passed)).collect()
}
