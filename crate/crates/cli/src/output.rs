//! JSON and CSV rendering. All output is deterministic: struct field order
//! is fixed, weight lists are sorted, and no timing data is included unless
//! explicitly requested.

use serde::Serialize;
use weylcert_core::criteria::{
    Certificate, Obstruction, RankContradiction, ScanEntry, ScanReport, ScanVerdict,
};
use weylcert_core::excision::Hyperplane;
use weylcert_core::rootsys::{boundary_subset, pc_family, RootSystem, Weight};
use weylcert_core::weightset::WeightSystem;

pub fn weight_str(w: &Weight) -> String {
    w.to_string()
}

pub fn fw_vec(rs: &RootSystem, w: &Weight) -> Vec<i64> {
    rs.fw_coefficients(w)
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer() as i64
        })
        .collect()
}

#[derive(Serialize)]
pub struct CertificateCounts {
    pub weights_off_set: u64,
    pub weights_off_multiset: u64,
    pub orbit_off: u64,
    pub roots_off: u64,
}

#[derive(Serialize)]
pub struct CertificateFlagsJson {
    pub codim_one: bool,
    pub inequality: bool,
    pub omega_diff: bool,
    pub omega_sum: Option<bool>,
    pub two_lambda: Option<bool>,
}

#[derive(Serialize)]
pub struct CertificateBody {
    pub omega: Vec<String>,
    pub normal: Option<Vec<i64>>,
    pub lhs: u64,
    pub rhs: u64,
    pub delta: u32,
    pub counts: CertificateCounts,
    pub flags: CertificateFlagsJson,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub family: String,
    pub rank: usize,
    pub lambda: String,
    pub lambda_fw: Vec<i64>,
    pub verdict: String,
    pub certificate: CertificateBody,
}

pub fn certificate_body(cert: &Certificate) -> CertificateBody {
    CertificateBody {
        omega: cert.omega.iter().map(weight_str).collect(),
        normal: cert.normal.clone(),
        lhs: cert.lhs,
        rhs: cert.rhs,
        delta: cert.delta,
        counts: CertificateCounts {
            weights_off_set: cert.weights_off_set,
            weights_off_multiset: cert.weights_off_multiset,
            orbit_off: cert.orbit_off,
            roots_off: cert.roots_off,
        },
        flags: CertificateFlagsJson {
            codim_one: cert.flags.codim_one,
            inequality: cert.flags.inequality,
            omega_diff: cert.flags.omega_diff,
            omega_sum: cert.flags.omega_sum,
            two_lambda: cert.flags.two_lambda,
        },
    }
}

pub fn verdict_str(cert: &Certificate) -> String {
    match &cert.verdict {
        weylcert_core::criteria::Verdict::Valid => "valid".to_string(),
        weylcert_core::criteria::Verdict::Invalid(reason) => format!("invalid({reason})"),
    }
}

pub fn certificate_json(rs: &RootSystem, cert: &Certificate) -> CertificateJson {
    CertificateJson {
        family: rs.family().to_string(),
        rank: rs.rank(),
        lambda: weight_str(&cert.lambda),
        lambda_fw: fw_vec(rs, &cert.lambda),
        verdict: verdict_str(cert),
        certificate: certificate_body(cert),
    }
}

#[derive(Serialize)]
pub struct RankBoundJson {
    pub n: u64,
    pub k: u64,
    pub eigen_mults: [u64; 3],
    pub module_rank: u64,
    pub bound: u64,
    pub route: String,
}

pub fn rank_bound_json(rc: &RankContradiction) -> RankBoundJson {
    RankBoundJson {
        n: rc.n,
        k: rc.k,
        eigen_mults: [rc.eigen_mults.0, rc.eigen_mults.1, rc.eigen_mults.2],
        module_rank: rc.module_rank,
        bound: rc.bound,
        route: rc.route.to_string(),
    }
}

#[derive(Serialize)]
pub struct ScanEntryJson {
    pub lambda_fw: Vec<i64>,
    pub lambda: String,
    pub verdict: String,
    pub mechanism: String,
    pub listed_polar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_bound: Option<RankBoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct ScanReportJson {
    pub family: String,
    pub rank: usize,
    pub coeff_sum_bound: u32,
    pub entries: Vec<ScanEntryJson>,
}

pub fn scan_entry_json(entry: &ScanEntry, runtime_ms: Option<u64>) -> ScanEntryJson {
    let (certificate, rank_bound) = match &entry.verdict {
        ScanVerdict::Obstructed(Obstruction::Certificate(c)) => {
            (Some(certificate_body(c)), None)
        }
        ScanVerdict::Obstructed(Obstruction::RankBound(rc)) => (None, Some(rank_bound_json(rc))),
        _ => (None, None),
    };
    ScanEntryJson {
        lambda_fw: entry.fw.clone(),
        lambda: weight_str(&entry.lambda),
        verdict: entry.verdict.name().to_string(),
        mechanism: entry.mechanism.to_string(),
        listed_polar: entry.listed_polar,
        certificate,
        rank_bound,
        runtime_ms,
    }
}

pub fn scan_report_json(report: &ScanReport, runtimes: Option<&[u64]>) -> ScanReportJson {
    ScanReportJson {
        family: report.family.to_string(),
        rank: report.rank,
        coeff_sum_bound: report.coeff_sum_bound,
        entries: report
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| scan_entry_json(e, runtimes.map(|r| r[i])))
            .collect(),
    }
}

pub fn scan_csv(report: &ScanReport) -> String {
    let mut out = String::from("family,rank,lambda_fw,verdict,mechanism,lhs,rhs\n");
    for e in &report.entries {
        let (lhs, rhs) = match &e.verdict {
            ScanVerdict::Obstructed(Obstruction::Certificate(c)) => {
                (c.lhs.to_string(), c.rhs.to_string())
            }
            ScanVerdict::Obstructed(Obstruction::RankBound(rc)) => {
                (rc.module_rank.to_string(), rc.bound.to_string())
            }
            _ => (String::new(), String::new()),
        };
        let fw: Vec<String> = e.fw.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            report.family,
            report.rank,
            fw.join(" "),
            e.verdict.name(),
            e.mechanism,
            lhs,
            rhs
        ));
    }
    out
}

#[derive(Serialize)]
pub struct InfoJson {
    pub family: String,
    pub rank: usize,
    pub roots: usize,
    pub positive_roots: usize,
    pub weyl_order: String,
    pub pq_index: u64,
    pub snf_divisors: Vec<i64>,
    pub simple_roots: Vec<String>,
    pub fundamental_weights: Vec<String>,
    pub boundary: Vec<String>,
    pub pc_members: Vec<Vec<usize>>,
}

/// 1-based positions of the subsystem roots inside the ambient simple
/// system, sorted.
pub fn simple_indices(rs: &RootSystem, roots: &[Weight]) -> Vec<usize> {
    let mut idx: Vec<usize> = roots
        .iter()
        .filter_map(|w| rs.simple_roots().iter().position(|a| a == w).map(|i| i + 1))
        .collect();
    idx.sort_unstable();
    idx
}

pub fn info_json(rs: &RootSystem) -> InfoJson {
    let boundary = boundary_subset(&rs.simple_subsystem())
        .map(|b| b.iter().map(weight_str).collect())
        .unwrap_or_default();
    let pc_members = if rs.rank() > 2 {
        pc_family(rs)
            .map(|fam| {
                fam.iter()
                    .map(|s| simple_indices(rs, s.roots()))
                    .collect()
            })
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    InfoJson {
        family: rs.family().to_string(),
        rank: rs.rank(),
        roots: rs.roots().len(),
        positive_roots: rs.positive_roots().len(),
        weyl_order: rs.weyl_order().to_string(),
        pq_index: rs.pq_index(),
        snf_divisors: rs.snf_divisors().to_vec(),
        simple_roots: rs.simple_roots().iter().map(weight_str).collect(),
        fundamental_weights: rs.fundamental_weights().iter().map(weight_str).collect(),
        boundary,
        pc_members,
    }
}

#[derive(Serialize)]
pub struct WeightEntryJson {
    pub weight: String,
    pub multiplicity: u64,
}

#[derive(Serialize)]
pub struct WeightsJson {
    pub family: String,
    pub rank: usize,
    pub lambda: String,
    pub lambda_fw: Vec<i64>,
    pub orbit_count: u64,
    pub distinct_weights: u64,
    pub total_multiplicity: u64,
    pub dimension: String,
    pub delta: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightEntryJson>>,
}

pub fn weights_json(ws: &WeightSystem<'_>, dimension: &str, full: bool) -> WeightsJson {
    let rs = ws.root_system();
    WeightsJson {
        family: rs.family().to_string(),
        rank: rs.rank(),
        lambda: weight_str(ws.lambda()),
        lambda_fw: fw_vec(rs, ws.lambda()),
        orbit_count: ws.lambda_orbit().len() as u64,
        distinct_weights: ws.set_count(),
        total_multiplicity: ws.multiset_count(),
        dimension: dimension.to_string(),
        delta: ws.delta(),
        weights: full.then(|| {
            ws.iter()
                .map(|(w, m)| WeightEntryJson {
                    weight: weight_str(w),
                    multiplicity: m,
                })
                .collect()
        }),
    }
}

/// Renders a hyperplane back to its canonical text form.
pub fn hyperplane_str(h: &Hyperplane) -> String {
    let entries: Vec<String> = h.normal().iter().map(|c| c.to_string()).collect();
    format!("normal:{}", entries.join(","))
}
