//! The analysis report shared by the command line and the browser demo.
//!
//! Every count is serialized as a decimal string and every scalar as `"p/q"`,
//! so the JSON form never contains a number literal.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::RingExtension;
use crate::bialgebroid::{
    all_pass, bialgebra_specialize, build_s_bialgebroid, build_t_bialgebroid, coproduct_agrees, pairing, verify_bialgebroid,
    weak_lift, AxiomCheck, Status, WeakLiftOutcome,
};
use crate::bimodule::{balanced, endo_to_matrix, frobenius, verify_frobenius, FrobeniusOutcome, NotFoundReason, SearchMethod, TMultiplication};
use crate::depth_two::{alternate_quasibase, is_d2, quasibase_coordinates, verify_quasibase, NotD2, Quasibase, Side};
use crate::galois::{galois_data, s_invariants, LinearMap, NotGaloisReason, Pipeline};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

pub const TOOL: &str = "bialgd";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// β and θ are written out only up to this many rows and columns.
pub const MATRIX_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// 0 pass, 1 fail, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    /// Any failure wins over an undecided check.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }
}

/// A count serialized as a decimal string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub u64);

impl From<usize> for Count {
    fn from(n: usize) -> Count {
        Count(n as u64)
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Count, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map(Count).map_err(serde::de::Error::custom)
    }
}

/// Which parts of the pipeline to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub d2: bool,
    pub frobenius: bool,
    pub balanced: bool,
    pub galois: bool,
    pub axioms: bool,
}

impl Checks {
    pub const NAMES: [&'static str; 5] = ["d2", "frobenius", "balanced", "galois", "axioms"];

    pub fn all() -> Checks {
        Checks { d2: true, frobenius: true, balanced: true, galois: true, axioms: true }
    }

    pub fn none() -> Checks {
        Checks { d2: false, frobenius: false, balanced: false, galois: false, axioms: false }
    }

    /// Comma-separated names from `d2, frobenius, balanced, galois, axioms, all`.
    pub fn parse(list: &str) -> Result<Checks, String> {
        let mut c = Checks::none();
        for item in list.split(',').map(str::trim) {
            match item {
                "all" => c = Checks::all(),
                "d2" => c.d2 = true,
                "frobenius" => c.frobenius = true,
                "balanced" => c.balanced = true,
                "galois" => c.galois = true,
                "axioms" => c.axioms = true,
                "" => return Err("empty check name".into()),
                other => return Err(format!("unknown check `{other}`; expected one of d2, frobenius, balanced, galois, axioms, all")),
            }
        }
        Ok(c)
    }

    pub fn names(&self) -> Vec<String> {
        let flags = [self.d2, self.frobenius, self.balanced, self.galois, self.axioms];
        Checks::NAMES.iter().zip(flags).filter(|(_, on)| *on).map(|(n, _)| n.to_string()).collect()
    }

    /// The biconditional needs all four properties.
    fn theorem(&self) -> bool {
        self.d2 && self.frobenius && self.balanced && self.galois
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub a: Count,
    pub b: Count,
    pub r: Count,
    pub tensor_square: Count,
    pub t: Count,
    pub s: Count,
    /// `A⊗_R T`, present once the coaction has been built
    pub a_tensor_r_t: Option<Count>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSection {
    /// `found`, `not_found` or `inconclusive`
    pub outcome: String,
    pub hom_dim: Count,
    pub method: Option<String>,
    pub dual_pairs: Option<Count>,
    /// `E: A → B` as a matrix on the basis of `A`
    pub e: Option<Vec<Vec<String>>>,
    pub certificate_verified: Option<bool>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideSection {
    pub d2: bool,
    pub quasibase_length: Option<Count>,
    pub quasibase_verified: Option<bool>,
    /// rank of the span of product maps when the identity is missed
    pub span_rank: Option<Count>,
    pub ambient: Option<Count>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthTwoSection {
    pub left: SideSection,
    pub right: SideSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSection {
    pub balanced: bool,
    pub dim_endo: Count,
    pub dim_double_commutant: Count,
    pub dim_b: Count,
    /// a double-commutant element outside `ρ(B)`
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisSection {
    pub galois: bool,
    pub reason: Option<String>,
    pub beta_bijective: Option<bool>,
    pub coinvariants_equal_b: Option<bool>,
    pub theta_beta_identity: Option<bool>,
    pub beta_theta_identity: Option<bool>,
    pub coinvariant_basis: Option<Vec<Vec<String>>>,
    /// invariants of `A` under `S`
    pub invariant_basis: Vec<Vec<String>>,
    pub invariants_equal_b: bool,
    pub comodule_axioms: Vec<AxiomCheck>,
    pub beta: Option<Vec<Vec<String>>>,
    pub theta: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingSection {
    pub dim_s: Count,
    pub dim_t: Count,
    pub rank_s: Count,
    pub rank_t: Count,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakLiftSection {
    /// `lifted`, `not_separable` or `inconclusive`
    pub outcome: String,
    pub checks: Vec<AxiomCheck>,
    pub radical_element: Option<Vec<String>>,
    pub nilpotency_index: Option<Count>,
    pub iota_rank: Option<Count>,
    pub image_dim: Option<Count>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSection {
    pub t_bialgebroid: Vec<AxiomCheck>,
    pub t_error: Option<String>,
    pub s_bialgebroid: Vec<AxiomCheck>,
    pub s_error: Option<String>,
    /// the coproduct of `T` from a second right quasibase agrees with the first
    pub coproduct_independent: Option<bool>,
    pub pairing: Option<PairingSection>,
    pub bialgebra: Option<Vec<AxiomCheck>>,
    pub weak_lift: Option<WeakLiftSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconditionalSection {
    /// whether a Frobenius system was found; the claim assumes one
    pub hypothesis_met: Option<bool>,
    /// `(Frobenius ∧ D2 ∧ balanced) ⟺ Galois`, read literally
    pub holds: Option<bool>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub seed: Count,
    pub field: String,
    pub checks: Vec<String>,
    pub dimensions: Dimensions,
    pub verdicts: Vec<CheckVerdict>,
    pub frobenius: Option<FrobeniusSection>,
    pub depth_two: Option<DepthTwoSection>,
    pub balanced: Option<BalancedSection>,
    pub galois: Option<GaloisSection>,
    pub axioms: Option<AxiomSection>,
    pub biconditional: Option<BiconditionalSection>,
    pub overall: Verdict,
}

impl ReportDocument {
    pub fn exit_code(&self) -> i32 {
        self.overall.exit_code()
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.verdict)
    }
}

pub fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn vector(v: &SparseVec, dim: usize, f: Field) -> Vec<String> {
    strings(&v.to_dense(dim, f))
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| strings(r)).collect()
}

fn linear_map_rows(m: &LinearMap, f: Field) -> Option<Vec<Vec<String>>> {
    (m.rows <= MATRIX_LIMIT && m.columns.len() <= MATRIX_LIMIT).then(|| matrix_rows(&m.to_matrix(f)))
}

fn side_section(r: &Result<Quasibase, NotD2>, verified: Option<bool>) -> SideSection {
    match r {
        Ok(qb) => SideSection {
            d2: true,
            quasibase_length: Some(qb.pairs.len().into()),
            quasibase_verified: verified,
            span_rank: None,
            ambient: None,
        },
        Err(e) => SideSection {
            d2: false,
            quasibase_length: None,
            quasibase_verified: None,
            span_rank: Some(e.span_rank.into()),
            ambient: Some(e.ambient.into()),
        },
    }
}

fn method_name(m: &SearchMethod) -> String {
    match m {
        SearchMethod::Basis { index } => format!("basis vector {index}"),
        SearchMethod::Sum => "sum of basis".into(),
        SearchMethod::Random { draw } => format!("random draw {draw}"),
        SearchMethod::Grid { point } => {
            let p: Vec<String> = point.iter().map(i64::to_string).collect();
            format!("grid point ({})", p.join(", "))
        }
    }
}

fn failing(checks: &[AxiomCheck]) -> String {
    let bad: Vec<&str> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    let skipped = checks.iter().filter(|c| c.status == Status::Skipped).count();
    match (bad.is_empty(), skipped) {
        (true, 0) => format!("{} checks pass", checks.len()),
        (true, s) => format!("{s} checks skipped"),
        (false, _) => format!("fails: {}", bad.join(", ")),
    }
}

/// Runs the requested checks on `ext` and assembles the report.
pub fn analyze(ext: &RingExtension, checks: Checks, seed: u64) -> ReportDocument {
    let f = ext.field();
    let n = ext.n();
    let p = Pipeline::new(ext);
    let mut verdicts = Vec::new();

    let frob = (checks.frobenius || checks.theorem()).then(|| frobenius(ext, seed));
    let frob_section = frob.as_ref().map(|outcome| match outcome {
        FrobeniusOutcome::Found { system, method, hom_dim } => {
            let cert = verify_frobenius(ext, system);
            verdicts.push(CheckVerdict {
                name: "frobenius".into(),
                verdict: Verdict::of(cert.is_ok()),
                detail: match &cert {
                    Ok(()) => format!("system with {} dual pairs, {}", system.x.len(), method_name(method)),
                    Err(w) => format!("candidate system fails its certificate: {w}"),
                },
            });
            FrobeniusSection {
                outcome: "found".into(),
                hom_dim: (*hom_dim).into(),
                method: Some(method_name(method)),
                dual_pairs: Some(system.x.len().into()),
                e: Some(matrix_rows(&endo_to_matrix(&system.e, n, f))),
                certificate_verified: Some(cert.is_ok()),
                reason: None,
            }
        }
        FrobeniusOutcome::NotFound { reason, hom_dim } => {
            let text = match reason {
                NotFoundReason::HomDimension { hom_dim, r_dim } => {
                    format!("dim Hom_(B,B)(A,B) = {hom_dim} differs from dim R = {r_dim}")
                }
                NotFoundReason::GridExhausted { points } => format!("all {points} grid points fail, the norm form vanishes"),
            };
            verdicts.push(CheckVerdict { name: "frobenius".into(), verdict: Verdict::Fail, detail: text.clone() });
            FrobeniusSection {
                outcome: "not_found".into(),
                hom_dim: (*hom_dim).into(),
                method: None,
                dual_pairs: None,
                e: None,
                certificate_verified: None,
                reason: Some(text),
            }
        }
        FrobeniusOutcome::Inconclusive { reason, hom_dim } => {
            verdicts.push(CheckVerdict { name: "frobenius".into(), verdict: Verdict::Inconclusive, detail: reason.clone() });
            FrobeniusSection {
                outcome: "inconclusive".into(),
                hom_dim: (*hom_dim).into(),
                method: None,
                dual_pairs: None,
                e: None,
                certificate_verified: None,
                reason: Some(reason.clone()),
            }
        }
    });
    if !checks.frobenius {
        verdicts.retain(|v| v.name != "frobenius");
    }

    let need_d2 = checks.d2 || checks.galois || checks.axioms;
    let d2 = need_d2.then(|| is_d2(ext, &p.ts, &p.t, &p.s));
    let d2_section = d2.as_ref().filter(|_| checks.d2).map(|d| {
        let check = |r: &Result<Quasibase, NotD2>| r.as_ref().ok().map(|qb| verify_quasibase(ext, &p.ts, qb).is_ok());
        let (lv, rv) = (check(&d.left), check(&d.right));
        let ok = d.is_d2() && lv == Some(true) && rv == Some(true);
        let detail = match (&d.left, &d.right) {
            (Ok(l), Ok(r)) if ok => format!("quasibases of length {} (left) and {} (right)", l.pairs.len(), r.pairs.len()),
            (Ok(_), Ok(_)) => "a quasibase fails re-verification".into(),
            (Err(_), Err(_)) => "neither side has a quasibase".into(),
            (Err(_), Ok(_)) => "no left quasibase".into(),
            (Ok(_), Err(_)) => "no right quasibase".into(),
        };
        verdicts.push(CheckVerdict { name: "d2".into(), verdict: Verdict::of(ok), detail });
        DepthTwoSection { left: side_section(&d.left, lv), right: side_section(&d.right, rv) }
    });

    let bal = (checks.balanced || checks.theorem()).then(|| balanced(ext));
    let bal_section = bal.as_ref().filter(|_| checks.balanced).map(|b| {
        verdicts.push(CheckVerdict {
            name: "balanced".into(),
            verdict: Verdict::of(b.balanced),
            detail: format!("double commutant has dimension {}, dim B = {}", b.dim_double_commutant, b.dim_b),
        });
        BalancedSection {
            balanced: b.balanced,
            dim_endo: b.dim_endo.into(),
            dim_double_commutant: b.dim_double_commutant.into(),
            dim_b: b.dim_b.into(),
            witness: b.witness.as_ref().map(|w| matrix_rows(&endo_to_matrix(w, n, f))),
        }
    });

    let data = match d2.as_ref().map(|d| &d.right) {
        Some(Ok(qb)) if checks.galois || checks.axioms => Some(galois_data(ext, &p, qb)),
        Some(Err(_)) => Some(Err(NotGaloisReason::NotRightD2)),
        _ => None,
    };
    let galois_flag = matches!(&data, Some(Ok(g)) if g.beta_bijective && g.coinvariants_equal_b);
    let galois_section = data.as_ref().filter(|_| checks.galois).map(|res| {
        let invariants = s_invariants(ext, &p.s);
        let invariant_basis = invariants.basis.iter().map(|v| vector(v, n, f)).collect();
        let invariants_equal_b = invariants.same_as(ext.b_space());
        match res {
            Ok(g) => {
                verdicts.push(CheckVerdict {
                    name: "galois".into(),
                    verdict: Verdict::of(galois_flag),
                    detail: format!(
                        "beta {}, coinvariants {} B",
                        if g.beta_bijective { "bijective" } else { "not bijective" },
                        if g.coinvariants_equal_b { "equal" } else { "differ from" }
                    ),
                });
                verdicts.push(CheckVerdict {
                    name: "comodule_axioms".into(),
                    verdict: Verdict::of(all_pass(&g.comodule_checks)),
                    detail: failing(&g.comodule_checks),
                });
                if g.beta_bijective {
                    verdicts.push(CheckVerdict {
                        name: "galois_inverse".into(),
                        verdict: Verdict::of(g.theta_beta_identity && g.beta_theta_identity),
                        detail: format!("theta∘beta = id: {}, beta∘theta = id: {}", g.theta_beta_identity, g.beta_theta_identity),
                    });
                }
                GaloisSection {
                    galois: galois_flag,
                    reason: None,
                    beta_bijective: Some(g.beta_bijective),
                    coinvariants_equal_b: Some(g.coinvariants_equal_b),
                    theta_beta_identity: Some(g.theta_beta_identity),
                    beta_theta_identity: Some(g.beta_theta_identity),
                    coinvariant_basis: Some(g.coinvariants.basis.iter().map(|v| vector(v, n, f)).collect()),
                    invariant_basis,
                    invariants_equal_b,
                    comodule_axioms: g.comodule_checks.clone(),
                    beta: linear_map_rows(&g.beta, f),
                    theta: linear_map_rows(&g.theta, f),
                }
            }
            Err(reason) => {
                verdicts.push(CheckVerdict { name: "galois".into(), verdict: Verdict::Fail, detail: reason.code().into() });
                GaloisSection {
                    galois: false,
                    reason: Some(reason.code().into()),
                    beta_bijective: None,
                    coinvariants_equal_b: None,
                    theta_beta_identity: None,
                    beta_theta_identity: None,
                    coinvariant_basis: None,
                    invariant_basis,
                    invariants_equal_b,
                    comodule_axioms: Vec::new(),
                    beta: None,
                    theta: None,
                }
            }
        }
    });

    let axiom_section = d2.as_ref().filter(|_| checks.axioms).map(|d| {
        let mut sec = AxiomSection {
            t_bialgebroid: Vec::new(),
            t_error: None,
            s_bialgebroid: Vec::new(),
            s_error: None,
            coproduct_independent: None,
            pairing: None,
            bialgebra: None,
            weak_lift: None,
        };
        let tb = match (&d.right, &data) {
            (Ok(_), Some(Ok(g))) => Some(g.t_bialgebroid.clone()),
            (Ok(qb), _) => build_t_bialgebroid(ext, &p.ts, &p.t, qb, TMultiplication::Composition).map_err(|e| sec.t_error = Some(e.to_string())).ok(),
            (Err(_), _) => {
                sec.t_error = Some("no right quasibase".into());
                None
            }
        };
        if let Some(tb) = &tb {
            sec.t_bialgebroid = verify_bialgebroid(tb);
            if let Ok(alt) = alternate_quasibase(ext, &p.ts, &p.t, &p.s, Side::Right) {
                if let Ok(tb2) = build_t_bialgebroid(ext, &p.ts, &p.t, &alt, TMultiplication::Composition) {
                    sec.coproduct_independent = Some(coproduct_agrees(tb, &tb2).is_ok());
                }
            }
            if let Ok(bia) = bialgebra_specialize(tb) {
                sec.bialgebra = Some(bia.checks);
            }
            sec.weak_lift = Some(weak_section(ext, tb, seed));
        }
        match &d.left {
            Ok(qb) => match build_s_bialgebroid(ext, &p.ts, &p.s, qb) {
                Ok(sb) => sec.s_bialgebroid = verify_bialgebroid(&sb),
                Err(e) => sec.s_error = Some(e.to_string()),
            },
            Err(_) => sec.s_error = Some("no left quasibase".into()),
        }
        if d.is_d2() {
            let pr = pairing(ext, &p.ts, &p.s, &p.t);
            sec.pairing = Some(PairingSection {
                dim_s: pr.dim_s.into(),
                dim_t: pr.dim_t.into(),
                rank_s: pr.rank_s.into(),
                rank_t: pr.rank_t.into(),
                nondegenerate: pr.nondegenerate(),
            });
        }
        for (name, checks, err) in [("bialgebroid_t", &sec.t_bialgebroid, &sec.t_error), ("bialgebroid_s", &sec.s_bialgebroid, &sec.s_error)] {
            let (verdict, detail) = match err {
                Some(e) => (Verdict::Fail, e.clone()),
                None => (Verdict::of(all_pass(checks)), failing(checks)),
            };
            verdicts.push(CheckVerdict { name: name.into(), verdict, detail });
        }
        if let Some(ok) = sec.coproduct_independent {
            verdicts.push(CheckVerdict {
                name: "coproduct_independent".into(),
                verdict: Verdict::of(ok),
                detail: "coproduct from a second right quasibase".into(),
            });
        }
        if let Some(pr) = &sec.pairing {
            verdicts.push(CheckVerdict {
                name: "pairing".into(),
                verdict: Verdict::of(pr.nondegenerate),
                detail: format!("dim S = {}, dim T = {}, ranks {} and {}", pr.dim_s, pr.dim_t, pr.rank_s, pr.rank_t),
            });
        }
        if let Some(b) = &sec.bialgebra {
            verdicts.push(CheckVerdict { name: "bialgebra".into(), verdict: Verdict::of(all_pass(b)), detail: failing(b) });
        }
        if let Some(w) = sec.weak_lift.as_ref().filter(|w| w.outcome == "lifted") {
            verdicts.push(CheckVerdict { name: "weak_lift".into(), verdict: Verdict::of(all_pass(&w.checks)), detail: failing(&w.checks) });
        }
        sec
    });

    let biconditional = checks.theorem().then(|| {
        let hypothesis_met = match frob.as_ref().expect("frobenius ran") {
            FrobeniusOutcome::Found { .. } => Some(frob_section.as_ref().and_then(|s| s.certificate_verified) == Some(true)),
            FrobeniusOutcome::NotFound { .. } => Some(false),
            FrobeniusOutcome::Inconclusive { .. } => None,
        };
        let d2_ok = d2.as_ref().is_some_and(|d| d.is_d2());
        let bal_ok = bal.as_ref().is_some_and(|b| b.balanced);
        let holds = hypothesis_met.map(|fr| (fr && d2_ok && bal_ok) == galois_flag);
        let verdict = match (hypothesis_met, holds) {
            (None, _) => Verdict::Inconclusive,
            (Some(false), _) => Verdict::Pass,
            (Some(true), h) => Verdict::of(h == Some(true)),
        };
        let detail = match hypothesis_met {
            None => "Frobenius search inconclusive".to_string(),
            Some(false) => format!("not Frobenius, claim does not apply (literal biconditional {})", holds == Some(true)),
            Some(true) => format!("D2 and balanced: {}, Galois: {}", d2_ok && bal_ok, galois_flag),
        };
        verdicts.push(CheckVerdict { name: "biconditional".into(), verdict, detail });
        BiconditionalSection { hypothesis_met, holds, verdict }
    });

    let a_tensor_r_t = match &data {
        Some(Ok(g)) => Some(g.coaction.art.dim().into()),
        _ => None,
    };
    let overall = Verdict::combine(verdicts.iter().map(|v| v.verdict));
    ReportDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        seed: Count(seed),
        field: f.to_string(),
        checks: checks.names(),
        dimensions: Dimensions {
            a: n.into(),
            b: ext.b_basis().len().into(),
            r: ext.r_basis().len().into(),
            tensor_square: p.ts.dim().into(),
            t: p.t.dim().into(),
            s: p.s.dim().into(),
            a_tensor_r_t,
        },
        verdicts,
        frobenius: frob_section.filter(|_| checks.frobenius),
        depth_two: d2_section,
        balanced: bal_section,
        galois: galois_section,
        axioms: axiom_section,
        biconditional,
        overall,
    }
}

fn weak_section(ext: &RingExtension, tb: &crate::bialgebroid::Bialgebroid, seed: u64) -> WeakLiftSection {
    let f = ext.field();
    match weak_lift(ext, tb, seed) {
        WeakLiftOutcome::Lifted(w) => WeakLiftSection {
            outcome: "lifted".into(),
            checks: w.checks,
            radical_element: None,
            nilpotency_index: None,
            iota_rank: Some(w.iota_rank.into()),
            image_dim: Some(w.image_dim.into()),
            reason: None,
        },
        WeakLiftOutcome::NotSeparable { radical_element, nilpotency_index } => WeakLiftSection {
            outcome: "not_separable".into(),
            checks: Vec::new(),
            radical_element: Some(vector(&radical_element, ext.n(), f)),
            nilpotency_index: Some(nilpotency_index.into()),
            iota_rank: None,
            image_dim: None,
            reason: Some("trace form of R is degenerate; the radical element is nilpotent".into()),
        },
        WeakLiftOutcome::Inconclusive { reason } => WeakLiftSection {
            outcome: "inconclusive".into(),
            checks: Vec::new(),
            radical_element: None,
            nilpotency_index: None,
            iota_rank: None,
            image_dim: None,
            reason: Some(reason),
        },
    }
}

pub fn render_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn vec_text(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn axiom_table(out: &mut String, title: &str, checks: &[AxiomCheck]) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{title}");
    for c in checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        match &c.witness {
            Some(w) => {
                let _ = writeln!(out, "  {status:<5}{}  [{w}]", c.name);
            }
            None => {
                let _ = writeln!(out, "  {status:<5}{}", c.name);
            }
        }
    }
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let d = &doc.dimensions;
    let _ = writeln!(out, "{} {}  field {}  seed {}", doc.tool, doc.version, doc.field, doc.seed);
    let _ = writeln!(
        out,
        "dim A = {}, dim B = {}, dim R = {}, dim A⊗_B A = {}, dim T = {}, dim S = {}, dim A⊗_R T = {}",
        d.a,
        d.b,
        d.r,
        d.tensor_square,
        d.t,
        d.s,
        opt(&d.a_tensor_r_t)
    );
    let width = doc.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0).max(5);
    let _ = writeln!(out, "\n{:<width$}  {:<12}  detail", "check", "verdict");
    for v in &doc.verdicts {
        let _ = writeln!(out, "{:<width$}  {:<12}  {}", v.name, v.verdict.label(), v.detail);
    }
    if let Some(fr) = &doc.frobenius {
        let _ = writeln!(out, "\nfrobenius: {} (dim Hom_(B,B)(A,B) = {})", fr.outcome, fr.hom_dim);
        if let Some(e) = &fr.e {
            let _ = writeln!(out, "  E, by rows:");
            for row in e {
                let _ = writeln!(out, "    {}", vec_text(row));
            }
        }
    }
    if let Some(dt) = &doc.depth_two {
        for (name, s) in [("left", &dt.left), ("right", &dt.right)] {
            if s.d2 {
                let _ = writeln!(out, "depth two, {name}: quasibase of length {}", opt(&s.quasibase_length));
            } else {
                let _ = writeln!(out, "depth two, {name}: none (span rank {} in dimension {})", opt(&s.span_rank), opt(&s.ambient));
            }
        }
    }
    if let Some(b) = &doc.balanced {
        if let Some(w) = &b.witness {
            let _ = writeln!(out, "unbalanced witness, by rows:");
            for row in w {
                let _ = writeln!(out, "    {}", vec_text(row));
            }
        }
    }
    if let Some(g) = &doc.galois {
        if let Some(c) = &g.coinvariant_basis {
            let _ = writeln!(out, "\ncoinvariants:");
            for v in c {
                let _ = writeln!(out, "  {}", vec_text(v));
            }
        }
        let _ = writeln!(out, "S-invariants{}:", if g.invariants_equal_b { " (= B)" } else { "" });
        for v in &g.invariant_basis {
            let _ = writeln!(out, "  {}", vec_text(v));
        }
        axiom_table(&mut out, "comodule algebra", &g.comodule_axioms);
    }
    if let Some(ax) = &doc.axioms {
        axiom_table(&mut out, "right bialgebroid T", &ax.t_bialgebroid);
        axiom_table(&mut out, "left bialgebroid S", &ax.s_bialgebroid);
        if let Some(b) = &ax.bialgebra {
            axiom_table(&mut out, "bialgebra (R = k)", b);
        }
        if let Some(w) = &ax.weak_lift {
            let _ = writeln!(out, "\nweak lift: {}", w.outcome);
            if let Some(r) = &w.reason {
                let _ = writeln!(out, "  {r}");
            }
            if let (Some(e), Some(k)) = (&w.radical_element, &w.nilpotency_index) {
                let _ = writeln!(out, "  radical element {} with nilpotency index {k}", vec_text(e));
            }
            axiom_table(&mut out, "weak coalgebra on T", &w.checks);
        }
    }
    if let Some(b) = &doc.biconditional {
        let _ = writeln!(
            out,
            "\nbiconditional: {} (Frobenius {}, literal value {})",
            b.verdict.label(),
            opt(&b.hypothesis_met),
            opt(&b.holds)
        );
    }
    let _ = writeln!(out, "\noverall: {}", doc.overall.label());
    out
}

/// A quasibase and how it was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasibaseDocument {
    pub tool: String,
    pub version: String,
    pub side: String,
    pub d2: bool,
    pub verified: Option<bool>,
    pub pairs: Vec<QuasibasePair>,
    pub span_rank: Option<Count>,
    pub ambient: Option<Count>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasibasePair {
    /// coordinates in the basis of `S`
    pub s: Vec<String>,
    /// the endomorphism as a matrix on `A`
    pub map: Vec<Vec<String>>,
    /// coordinates in the basis of `T`
    pub t: Vec<String>,
    /// the element of `A⊗_B A`, written out
    pub element: String,
}

impl QuasibaseDocument {
    pub fn exit_code(&self) -> i32 {
        Verdict::of(self.d2 && self.verified == Some(true)).exit_code()
    }
}

pub fn quasibase_document(ext: &RingExtension, side: Side) -> QuasibaseDocument {
    let p = Pipeline::new(ext);
    let d = is_d2(ext, &p.ts, &p.t, &p.s);
    let res = match side {
        Side::Left => d.left,
        Side::Right => d.right,
    };
    let base = QuasibaseDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        side: side.name().into(),
        d2: false,
        verified: None,
        pairs: Vec::new(),
        span_rank: None,
        ambient: None,
    };
    match res {
        Ok(qb) => {
            let coords = quasibase_coordinates(&qb, &p.s, &p.t);
            let pairs = qb
                .pairs
                .iter()
                .zip(coords)
                .map(|((alpha, u), (sc, tc))| QuasibasePair {
                    s: strings(&sc),
                    map: matrix_rows(&endo_to_matrix(alpha, ext.n(), ext.field())),
                    t: strings(&tc),
                    element: p.ts.describe(u),
                })
                .collect();
            QuasibaseDocument { d2: true, verified: Some(verify_quasibase(ext, &p.ts, &qb).is_ok()), pairs, ..base }
        }
        Err(e) => QuasibaseDocument { span_rank: Some(e.span_rank.into()), ambient: Some(e.ambient.into()), ..base },
    }
}

pub fn render_quasibase_text(doc: &QuasibaseDocument) -> String {
    let mut out = String::new();
    if !doc.d2 {
        let _ = writeln!(
            out,
            "not depth two on the {} side: span rank {} in dimension {}",
            doc.side,
            opt(&doc.span_rank),
            opt(&doc.ambient)
        );
        return out;
    }
    let _ = writeln!(out, "{} quasibase, {} pairs, verified: {}", doc.side, doc.pairs.len(), opt(&doc.verified));
    for (i, pair) in doc.pairs.iter().enumerate() {
        let _ = writeln!(out, "\npair {i}");
        let _ = writeln!(out, "  S coordinates {}", vec_text(&pair.s));
        let _ = writeln!(out, "  T coordinates {}", vec_text(&pair.t));
        let _ = writeln!(out, "  t = {}", pair.element);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground_field, quadratic};

    #[test]
    fn checks_parse() {
        assert_eq!(Checks::parse("all").unwrap(), Checks::all());
        let c = Checks::parse("d2, galois").unwrap();
        assert_eq!(c.names(), vec!["d2", "galois"]);
        assert!(Checks::parse("d2,bogus").is_err());
        assert!(Checks::parse("").is_err());
    }

    #[test]
    fn combine_prefers_fail() {
        use Verdict::*;
        assert_eq!(Verdict::combine([Pass, Inconclusive, Fail]), Fail);
        assert_eq!(Verdict::combine([Pass, Inconclusive]), Inconclusive);
        assert_eq!(Verdict::combine([]), Pass);
    }

    #[test]
    fn trivial_extension_passes_everything() {
        let ext = RingExtension::improper(ground_field(Field::Rational));
        let doc = analyze(&ext, Checks::all(), 0);
        assert_eq!(doc.overall, Verdict::Pass, "{}", render_text(&doc));
        assert_eq!(doc.dimensions.a, Count(1));
    }

    #[test]
    fn json_round_trip_and_no_number_literals() {
        let ext = RingExtension::over_scalars(quadratic(Field::Rational, 2));
        let doc = analyze(&ext, Checks::all(), 7);
        let json = render_json(&doc);
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        fn no_numbers(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(_) => false,
                serde_json::Value::Array(a) => a.iter().all(no_numbers),
                serde_json::Value::Object(o) => o.values().all(no_numbers),
                _ => true,
            }
        }
        assert!(no_numbers(&value));
    }
}
