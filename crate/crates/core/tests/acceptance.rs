//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Every comparison is exact (tolerance zero); the only
//! tolerances are the wall-clock limits below, measured on the test build.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lie_rigidity::charmap::{maurer_cartan_check, phi_chain_suite, zeta_image};
use lie_rigidity::cochain::{Cochain, Coefficients, Flavor};
use lie_rigidity::exact::{filtration_check, les_check, SequenceKind};
use lie_rigidity::forms::forms_report;
use lie_rigidity::homology::{coboundary_matrix, cohomology, same_class_up_to_scalar, Theory};
use lie_rigidity::liealg::{Algebra, StructureConstants};
use lie_rigidity::maps::{i_map, maps_report, rigidity_certify, Verdict};
use lie_rigidity::Result;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;
const W0: Option<i64> = Some(0);

fn sl2() -> Algebra {
    StructureConstants::sl2().into()
}

fn heisenberg3() -> Algebra {
    StructureConstants::heisenberg3().into()
}

fn betti(alg: &Algebra, theory: Theory, degrees: std::ops::RangeInclusive<usize>, w: Option<i64>) -> Result<Vec<usize>> {
    degrees.map(|q| cohomology(alg, q, theory, w).map(|s| s.betti)).collect()
}

fn gv() -> Cochain {
    Cochain::wedge(&[0, 1, 2]).with_weight(W0)
}

/// `β_1 ⊗ (β_0 ∧ β_1 ∧ β_2)`.
fn zeta() -> Cochain {
    gv().prepend(1).with_weight(W0)
}

fn leibniz_vanishing() -> Result<(bool, String)> {
    let b = betti(&sl2(), Theory::Leibniz, 1..=4, None)?;
    Ok((b.iter().all(|&x| x == 0), format!("HL^1..4(sl2) = {b:?}")))
}

fn coadjoint_route() -> Result<(bool, String)> {
    let direct = betti(&sl2(), Theory::Coadjoint, 0..=3, None)?;
    let cert = rigidity_certify(&sl2(), 4, 3)?;
    let rigid = cert.verdicts.iter().all(|v| v.verdict == Verdict::Rigid && v.leibniz_route && v.coadjoint_route);
    let ok = direct.iter().all(|&x| x == 0) && cert.coadjoint_betti == direct && rigid && cert.routes_agree;
    Ok((ok, format!("H^0..3(sl2; sl2') = {direct:?}, certificate rigid for n <= 4: {rigid}")))
}

fn w1_lie() -> Result<(bool, String)> {
    let w1 = Algebra::W1;
    let h3 = cohomology(&w1, 3, Theory::Lie, W0)?;
    let in_span = h3.betti == 1
        && h3.representatives[0].entries().all(|(k, _)| k.slots == [0, 1, 2])
        && !h3.representatives[0].is_zero();
    let coad = betti(&w1, Theory::Coadjoint, 0..=5, W0)?;
    let ok = in_span && coad == [0, 0, 1, 1, 0, 0];
    Ok((ok, format!("dim H^3 = {}, rep in span(b0^b1^b2): {in_span}, H^(q-1)(W1; W1') q=1..6 = {coad:?}", h3.betti)))
}

fn w1_leibniz() -> Result<(bool, String)> {
    let w1 = Algebra::W1;
    let b = betti(&w1, Theory::Leibniz, 0..=5, W0)?;
    let h4 = cohomology(&w1, 4, Theory::Leibniz, W0)?;
    let same = h4.betti == 1 && same_class_up_to_scalar(&w1, Theory::Leibniz, W0, &zeta(), &h4.representatives[0])?;
    Ok((b == [1, 0, 0, 1, 1, 0] && same, format!("HL^0..5 = {b:?}, HL^4 rep ~ b1 (x) (b0^b1^b2): {same}")))
}

fn sign_identity() -> Result<(bool, String)> {
    let generator = Cochain::coadjoint_wedge(&[0, 1, 2], 1).with_weight(W0);
    let image = i_map(&Algebra::W1, &generator)?;
    let ok = image.add(&zeta())?.is_zero();
    Ok((ok, "i((b0^b1^b2) (x) b1) + b1 (x) (b0^b1^b2) = 0".into()))
}

fn chain_maps() -> Result<(bool, String)> {
    let mut checks = 0;
    let mut ok = true;
    for alg in [sl2(), heisenberg3()] {
        let r = maps_report(&alg, 4, None)?;
        checks += r.commutation.len() + r.phi_var_equals_d.len() + r.diagram.len();
        ok &= r.pass
            && r.commutation.iter().all(|c| c.commutes)
            && r.phi_var_equals_d.iter().all(|(_, b)| *b)
            && r.diagram.iter().all(|d| d.commutes);
    }
    Ok((ok, format!("{checks} exact matrix identities on sl2 and heisenberg3, q <= 4")))
}

fn long_exact_sequences() -> Result<(bool, String)> {
    let mut ok = true;
    let mut nodes = 0;
    for alg in [sl2(), heisenberg3()] {
        for kind in [SequenceKind::RelativeGeneral, SequenceKind::Variation] {
            let r = les_check(kind, &alg, 4, None)?;
            nodes += r.nodes.len();
            ok &= r.pass;
        }
    }
    let mut heads = Vec::new();
    let finite = [sl2(), heisenberg3(), StructureConstants::abelian(1).into(), StructureConstants::abelian(2).into(), StructureConstants::abelian(3).into()];
    for (alg, w) in finite.into_iter().map(|a| (a, None)).chain([(Algebra::W1, W0)]) {
        let r = les_check(SequenceKind::RelativeGeneral, &alg, 2, w)?;
        let head = r.head_isomorphism == Some(true);
        ok &= head;
        heads.push(format!("{}:{head}", alg.name()));
    }
    Ok((ok, format!("{nodes} exact nodes; head isomorphism {}", heads.join(" "))))
}

fn filtration() -> Result<(bool, String)> {
    let mut ok = true;
    let mut names = Vec::new();
    for (alg, w) in [(sl2(), None), (heisenberg3(), None), (Algebra::W1, W0)] {
        let r = filtration_check(&alg, 3, 5, w)?;
        ok &= r.pass && r.bottom_vanishes.len() == 4 && r.bottom_vanishes.iter().all(|(_, b)| *b);
        names.push(alg.name());
    }
    Ok((ok, format!("s <= 3, tensor degree <= 5 on {}", names.join(", "))))
}

fn dga() -> Result<(bool, String)> {
    let r = forms_report(8, 200, SEED)?;
    let ok = r.pass
        && r.square_zero.holds
        && r.square_zero.products_checked == 200
        && r.c_zeta_rewrite.holds
        && r.scale_invariance.holds
        && r.shift_invariance.holds;
    Ok((ok, format!("d^2 = 0 on {} generators and 200 products, c(zeta) = {}", r.square_zero.generators_checked, r.c_zeta)))
}

fn maurer_cartan() -> Result<(bool, String)> {
    let mc = maurer_cartan_check(8)?;
    let Some(eps) = mc.epsilon.filter(|_| mc.consistent) else {
        return Ok((false, "no consistent sign".into()));
    };
    let chain = phi_chain_suite(eps)?;
    let gv_holds = chain.iter().any(|c| c.cochain == Cochain::wedge(&[0, 1, 2]).describe(&Algebra::W1)) && chain.iter().all(|c| c.holds);
    let z = zeta_image()?;
    let image = z.image.to_string();
    let ok = gv_holds && z.pass && image == "w1'^w0^w1^w2";
    Ok((ok, format!("epsilon = {eps:+} for k <= 8, chain identity on GV: {gv_holds}, c(zeta) = {image}")))
}

fn determinism() -> Result<(bool, String)> {
    let reports = || -> Result<String> {
        let forms = serde_json::to_string(&forms_report(8, 200, SEED)?).expect("serializable");
        let cert = serde_json::to_string(&rigidity_certify(&Algebra::W1, 4, 1)?).expect("serializable");
        Ok(forms + &cert)
    };
    let identical = reports()? == reports()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut invariant = true;
    let slices: [(Algebra, usize, Flavor, Coefficients, Option<i64>); 4] = [
        (sl2(), 3, Flavor::Tensor, Coefficients::Trivial, None),
        (heisenberg3(), 2, Flavor::Alternating, Coefficients::Coadjoint, None),
        (Algebra::W1, 4, Flavor::Tensor, Coefficients::Trivial, W0),
        (Algebra::W1, 3, Flavor::Alternating, Coefficients::Coadjoint, W0),
    ];
    for (alg, q, f, c, w) in &slices {
        let d = coboundary_matrix(alg, *q, *f, *c, *w)?;
        for _ in 0..5 {
            let mut rows: Vec<usize> = (0..d.rows()).collect();
            let mut cols: Vec<usize> = (0..d.cols()).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            invariant &= d.permuted(&rows, &cols).rank() == d.rank();
        }
    }
    Ok((identical && invariant, format!("identical reports: {identical}, rank invariant under 20 shuffles: {invariant}")))
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<(bool, String)>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        (1, "Leibniz cohomology of sl2 vanishes", secs(10), leibniz_vanishing),
        (2, "coadjoint route agrees with the certificate", secs(10), coadjoint_route),
        (3, "W1 weight-0 Lie cohomology", secs(60), w1_lie),
        (4, "W1 weight-0 Leibniz cohomology", secs(120), w1_leibniz),
        (5, "sign identity for i", secs(60), sign_identity),
        (6, "chain-map suite", secs(60), chain_maps),
        (7, "long exact sequences", secs(60), long_exact_sequences),
        (8, "filtration", secs(60), filtration),
        (9, "DGA suite", secs(5), dga),
        (10, "Maurer-Cartan sign and characteristic map", secs(60), maurer_cartan),
        (11, "determinism", secs(60), determinism),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed < limit, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {n:>2} {name}: {detail} [{:.2} s, limit {} s]",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
