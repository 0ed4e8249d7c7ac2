//! Independent dense oracles for brackets, ranks and Betti numbers. Nothing
//! here calls the library's coboundary or elimination code; the frozen values
//! below were produced by these oracles and agree with the library.

use lie_rigidity::cochain::{Coefficients, Flavor};
use lie_rigidity::homology::{cohomology, coboundary_matrix, Theory};
use lie_rigidity::liealg::{w1_bracket, Algebra, StructureConstants};
use lie_rigidity::linalg::SparseMatrix;
use lie_rigidity::rational::Q;
use num_traits::{One, Zero};

// ---------- W1 as polynomial vector fields ----------

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * Q::from_integer(k.into()))
}

/// `f_i = x^i / i! d/dx` as a coefficient vector.
fn field(i: usize) -> Vec<Q> {
    let mut p = vec![Q::zero(); i + 1];
    p[i] = factorial(i).recip();
    p
}

fn derivative(p: &[Q]) -> Vec<Q> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer(k.into())).collect()
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `[p d/dx, q d/dx] = (p q' - q p') d/dx`, expanded in the `f_n` basis.
fn oracle_bracket(i: usize, j: usize) -> Vec<(usize, Q)> {
    let (p, q) = (field(i), field(j));
    let a = poly_mul(&p, &derivative(&q));
    let b = poly_mul(&q, &derivative(&p));
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let c = a.get(k).cloned().unwrap_or_else(Q::zero) - b.get(k).cloned().unwrap_or_else(Q::zero);
            (k, c * factorial(k))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

#[test]
fn w1_bracket_matches_vector_fields() {
    for i in 0..=12 {
        for j in 0..=12 {
            let lib: Vec<(usize, Q)> = w1_bracket(i, j).into_iter().collect();
            assert_eq!(lib, oracle_bracket(i, j), "[f{i}, f{j}]");
        }
    }
}

#[test]
fn jacobi_and_antisymmetry_scans() {
    for alg in [
        Algebra::from(StructureConstants::sl2()),
        StructureConstants::heisenberg3().into(),
        StructureConstants::abelian(4).into(),
        Algebra::W1,
    ] {
        assert!(alg.jacobi_violations(24).is_empty(), "{alg}");
        assert!(alg.antisymmetry_violations(24).is_empty(), "{alg}");
        assert!(alg.grading_violations(24).is_empty(), "{alg}");
    }
}

// ---------- dense rank ----------

fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_dense(m: &SparseMatrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

#[test]
fn sparse_rank_matches_dense_on_coboundaries() {
    let sl2: Algebra = StructureConstants::sl2().into();
    for q in 0..4 {
        for (f, c) in [
            (Flavor::Tensor, Coefficients::Trivial),
            (Flavor::Alternating, Coefficients::Trivial),
            (Flavor::Alternating, Coefficients::Coadjoint),
        ] {
            let d = coboundary_matrix(&sl2, q, f, c, None).unwrap();
            assert_eq!(d.rank(), dense_rank(to_dense(&d)), "sl2 q={q} {f} {c}");
        }
    }
    for w in -2..=2 {
        let d = coboundary_matrix(&Algebra::W1, 3, Flavor::Tensor, Coefficients::Trivial, Some(w)).unwrap();
        assert_eq!(d.rank(), dense_rank(to_dense(&d)), "w1 w={w}");
    }
}

// ---------- dense coboundaries from the defining formulas ----------

type Bracket<'a> = dyn Fn(usize, usize) -> Vec<(usize, Q)> + 'a;

fn finite_bracket(s: &StructureConstants) -> impl Fn(usize, usize) -> Vec<(usize, Q)> + '_ {
    move |i, j| s.bracket_basis(i, j).into_iter().collect()
}

fn sort_sign(t: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = t.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// `(dα)(x_1..x_{n+1}) = Σ_{i<j} (-1)^{j+1} α(.., [x_i, x_j] at i, .., x̂_j, ..)`.
fn loday_matrix(src: &[Vec<usize>], tgt: &[Vec<usize>], bracket: &Bracket<'_>) -> Vec<Vec<Q>> {
    let pos = |t: &Vec<usize>| src.iter().position(|s| s == t);
    tgt.iter()
        .map(|t| {
            let mut row = vec![Q::zero(); src.len()];
            for j in 1..t.len() {
                for i in 0..j {
                    for (k, c) in bracket(t[i], t[j]) {
                        let mut s = t.clone();
                        s[i] = k;
                        s.remove(j);
                        if let Some(col) = pos(&s) {
                            // 0-based j is 1-based j + 1
                            if j % 2 == 0 {
                                row[col] -= c;
                            } else {
                                row[col] += c;
                            }
                        }
                    }
                }
            }
            row
        })
        .collect()
}

/// `(dα)(x_1..x_{n+1}) = Σ_{i<j} (-1)^{i+j} α([x_i, x_j], .., x̂_i, .., x̂_j, ..)` on sorted tuples.
fn ce_matrix(src: &[Vec<usize>], tgt: &[Vec<usize>], bracket: &Bracket<'_>) -> Vec<Vec<Q>> {
    tgt.iter()
        .map(|t| {
            let mut row = vec![Q::zero(); src.len()];
            for j in 1..t.len() {
                for i in 0..j {
                    for (k, c) in bracket(t[i], t[j]) {
                        let mut s = vec![k];
                        s.extend(t.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x));
                        let Some((sorted, odd)) = sort_sign(&s) else {
                            continue;
                        };
                        let Some(col) = src.iter().position(|x| *x == sorted) else {
                            continue;
                        };
                        let negative = (i + j) % 2 == 1;
                        if negative != odd {
                            row[col] -= c;
                        } else {
                            row[col] += c;
                        }
                    }
                }
            }
            row
        })
        .collect()
}

fn tuples(elems: &[usize], q: usize, keep: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |&e| {
                    let mut u = t.clone();
                    u.push(e);
                    u
                })
            })
            .collect();
    }
    out.retain(|t| keep(t));
    out
}

type MatrixOf<'a> = dyn Fn(&[Vec<usize>], &[Vec<usize>]) -> Vec<Vec<Q>> + 'a;

fn betti(spaces: &[Vec<Vec<usize>>], matrix: &MatrixOf<'_>) -> Vec<usize> {
    let ranks: Vec<usize> = spaces.windows(2).map(|w| dense_rank(matrix(&w[0], &w[1]))).collect();
    (0..ranks.len())
        .map(|q| spaces[q].len() - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 })
        .collect()
}

fn oracle_lie(bracket: &Bracket<'_>, elems: &[usize], max_q: usize, keep: &dyn Fn(&[usize]) -> bool) -> Vec<usize> {
    let spaces: Vec<_> = (0..=max_q + 1)
        .map(|q| tuples(elems, q, &|t| t.windows(2).all(|w| w[0] < w[1]) && keep(t)))
        .collect();
    betti(&spaces, &|s, t| ce_matrix(s, t, bracket))
}

fn oracle_leibniz(bracket: &Bracket<'_>, elems: &[usize], max_q: usize, keep: &dyn Fn(&[usize]) -> bool) -> Vec<usize> {
    let spaces: Vec<_> = (0..=max_q + 1).map(|q| tuples(elems, q, keep)).collect();
    betti(&spaces, &|s, t| loday_matrix(s, t, bracket))
}

fn library_betti(alg: &Algebra, theory: Theory, max_q: usize, w: Option<i64>) -> Vec<usize> {
    (0..=max_q).map(|q| cohomology(alg, q, theory, w).unwrap().betti).collect()
}

#[test]
fn finite_algebras_against_dense_oracle() {
    let all = |_: &[usize]| true;
    let cases: [(StructureConstants, [usize; 5], [usize; 5]); 4] = [
        (StructureConstants::sl2(), [1, 0, 0, 1, 0], [1, 0, 0, 0, 0]),
        (StructureConstants::heisenberg3(), [1, 2, 2, 1, 0], [1, 2, 5, 10, 22]),
        (StructureConstants::abelian(2), [1, 2, 1, 0, 0], [1, 2, 4, 8, 16]),
        (StructureConstants::abelian(3), [1, 3, 3, 1, 0], [1, 3, 9, 27, 81]),
    ];
    for (s, lie, leibniz) in cases {
        let elems: Vec<usize> = (0..s.dim()).collect();
        let br = finite_bracket(&s);
        let alg: Algebra = s.clone().into();
        let oracle_l = oracle_lie(&br, &elems, 4, &all);
        let oracle_hl = oracle_leibniz(&br, &elems, if s.dim() == 3 { 3 } else { 4 }, &all);
        assert_eq!(oracle_l, lie, "{} lie oracle", s.name());
        assert_eq!(library_betti(&alg, Theory::Lie, 4, None), lie, "{} lie", s.name());
        assert_eq!(oracle_hl[..], leibniz[..oracle_hl.len()], "{} leibniz oracle", s.name());
        assert_eq!(library_betti(&alg, Theory::Leibniz, 4, None), leibniz, "{} leibniz", s.name());
    }
}

#[test]
fn w1_slices_against_dense_oracle() {
    let br = |i: usize, j: usize| oracle_bracket(i, j);
    // weight of a cochain on f_{k_1}..f_{k_q} is Σ (1 - k_i)
    let weight = |t: &[usize]| t.iter().map(|&k| 1 - k as i64).sum::<i64>();
    for w in [-2i64, -1, 0, 1] {
        let keep = move |t: &[usize]| weight(t) == w;
        let max_q = 4;
        let elems: Vec<usize> = (0..=(max_q + 1) * 2 + 2).collect();
        let lie = oracle_lie(&br, &elems, max_q, &keep);
        assert_eq!(library_betti(&Algebra::W1, Theory::Lie, max_q, Some(w)), lie, "lie w={w}");
        let hl = oracle_leibniz(&br, &elems, 4, &keep);
        assert_eq!(library_betti(&Algebra::W1, Theory::Leibniz, 4, Some(w)), hl, "leibniz w={w}");
        if w == 0 {
            assert_eq!(lie, vec![1, 0, 0, 1, 0]);
            assert_eq!(hl, vec![1, 0, 0, 1, 1]);
        } else {
            assert!(lie.iter().chain(&hl).all(|&b| b == 0), "w={w}");
        }
    }
}

#[test]
fn square_zero_on_every_flavor() {
    let finite = [
        Algebra::from(StructureConstants::sl2()),
        StructureConstants::heisenberg3().into(),
        StructureConstants::abelian(2).into(),
    ];
    let flavors = [
        (Flavor::Tensor, Coefficients::Trivial),
        (Flavor::Alternating, Coefficients::Trivial),
        (Flavor::Alternating, Coefficients::Coadjoint),
        (Flavor::Tensor, Coefficients::Coadjoint),
    ];
    for alg in &finite {
        for (f, c) in flavors {
            for q in 0..4 {
                let d0 = coboundary_matrix(alg, q, f, c, None).unwrap();
                let d1 = coboundary_matrix(alg, q + 1, f, c, None).unwrap();
                assert!(d1.mul(&d0).is_zero(), "{alg} {f} {c} q={q}");
            }
        }
    }
    for w in -2..=2 {
        for (f, c) in flavors {
            for q in 0..4 {
                let d0 = coboundary_matrix(&Algebra::W1, q, f, c, Some(w)).unwrap();
                let d1 = coboundary_matrix(&Algebra::W1, q + 1, f, c, Some(w)).unwrap();
                assert!(d1.mul(&d0).is_zero(), "w1 {f} {c} q={q} w={w}");
            }
        }
    }
}
