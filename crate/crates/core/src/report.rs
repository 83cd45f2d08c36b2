//! Deterministic analysis reports and graph exports.
//!
//! The analysis report aggregates, for one reduced word: the projected
//! permutation with its cycle and block data, the sign-conjugation orbits
//! of the lift coset with their stratum counts, per-lift skeleton
//! statistics, and the quadruple patterns seeding dimension-2 strata.
//! Graphs additionally export to JSON (round-trippable) and DOT.

use serde::{Deserialize, Serialize};

use crate::clifford::AhatNotation;
use crate::spin::{coset, orbit_decomposition, OrbitReport, SpinWeylElement};
use crate::strata::{
    enumerate_d2_preancestries, skeleton_stats, Preancestry2, SkeletonStats, StrataGraph,
};
use crate::words::ReducedWord;

/// One quadruple pattern in export form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D2Entry {
    pub positions: Vec<usize>,
    pub signs: Vec<i8>,
    #[serde(rename = "type")]
    pub kind: String,
}

impl From<&Preancestry2> for D2Entry {
    fn from(p: &Preancestry2) -> Self {
        D2Entry {
            positions: p.positions.to_vec(),
            signs: p.signs.to_vec(),
            kind: p.d2_type.to_string(),
        }
    }
}

/// Skeleton statistics of a single lift value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSummary {
    pub z: String,
    pub n_value: u64,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub isolated: usize,
}

/// One sign-conjugation orbit with its members' statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub representative: String,
    pub size: usize,
    pub re: String,
    pub c_anti: u8,
    pub n_value: u64,
    pub members: Vec<ZSummary>,
}

/// Full per-word analysis; serialization order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub word: Vec<usize>,
    pub permutation: String,
    pub length: usize,
    pub rank: usize,
    pub cycle_count: usize,
    pub block_set: Vec<usize>,
    pub lift_total: u64,
    pub components_total: usize,
    pub isolated_total: usize,
    pub orbits: Vec<OrbitSummary>,
    pub d2_preancestries: Vec<D2Entry>,
}

fn render(z: &SpinWeylElement) -> String {
    z.to_ahat_string(AhatNotation::Ascii)
}

/// Orbits of the coset with skeleton-derived isolated counts filled in.
pub fn decorated_orbits(word: &ReducedWord, threads: usize) -> Vec<OrbitReport> {
    let stats = skeleton_stats(word, threads);
    let mut orbits = orbit_decomposition(word);
    for orbit in &mut orbits {
        orbit.isolated_count = Some(
            stats
                .get(&orbit.representative)
                .copied()
                .unwrap_or_default()
                .isolated,
        );
    }
    orbits
}

/// Assembles the analysis of one reduced word.  Internal consistency is
/// asserted: stratum counts sum to `2^length`, every bucket has exactly
/// its counted vertices, and the component total matches the per-lift sum.
pub fn analysis_report(word: &ReducedWord, threads: usize) -> AnalysisReport {
    let sigma = word.perm();
    let stats = skeleton_stats(word, threads);
    let orbits = orbit_decomposition(word);
    let stat_of = |z: &SpinWeylElement| -> SkeletonStats {
        stats.get(z).copied().unwrap_or_default()
    };
    let mut lift_total = 0u64;
    let mut components_total = 0usize;
    let mut isolated_total = 0usize;
    let orbit_summaries: Vec<OrbitSummary> = orbits
        .iter()
        .map(|orbit| {
            let n_value = orbit.n_value.expect("decomposition fills stratum counts");
            let members: Vec<ZSummary> = orbit
                .members
                .iter()
                .map(|z| {
                    let s = stat_of(z);
                    assert_eq!(
                        s.vertices as u64, n_value,
                        "bucket size must equal the stratum count"
                    );
                    lift_total += s.vertices as u64;
                    components_total += s.components;
                    isolated_total += s.isolated;
                    ZSummary {
                        z: render(z),
                        n_value,
                        vertices: s.vertices,
                        edges: s.edges,
                        components: s.components,
                        isolated: s.isolated,
                    }
                })
                .collect();
            OrbitSummary {
                representative: render(&orbit.representative),
                size: orbit.members.len(),
                re: orbit.re_value.to_string(),
                c_anti: orbit.c_anti,
                n_value,
                members,
            }
        })
        .collect();
    assert_eq!(lift_total, 1 << word.len(), "stratum counts must sum to 2^length");
    AnalysisReport {
        word: word.letters().to_vec(),
        permutation: sigma
            .oneline()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(if sigma.size() > 9 { "," } else { "" }),
        length: word.len(),
        rank: word.rank(),
        cycle_count: sigma.cycle_count(),
        block_set: sigma.block_set(),
        lift_total,
        components_total,
        isolated_total,
        orbits: orbit_summaries,
        d2_preancestries: enumerate_d2_preancestries(word).iter().map(D2Entry::from).collect(),
    }
}

pub fn report_to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(text: &str) -> serde_json::Result<AnalysisReport> {
    serde_json::from_str(text)
}

/// Export form of a 1-skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub word: Vec<usize>,
    pub z: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeExport>,
    pub d2_preancestries: Vec<D2Entry>,
    pub components: usize,
    pub isolated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeExport {
    pub label: String,
    pub endpoints: (usize, usize),
}

pub fn graph_export(graph: &StrataGraph) -> GraphExport {
    GraphExport {
        word: graph.word.letters().to_vec(),
        z: render(&graph.z),
        vertices: graph.vertices.iter().map(|v| v.compact()).collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| EdgeExport { label: e.label.to_string(), endpoints: e.endpoints })
            .collect(),
        d2_preancestries: enumerate_d2_preancestries(&graph.word)
            .iter()
            .map(D2Entry::from)
            .collect(),
        components: graph.components(),
        isolated: graph.isolated_count(),
    }
}

pub fn graph_to_json(graph: &StrataGraph) -> String {
    serde_json::to_string_pretty(&graph_export(graph)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> serde_json::Result<GraphExport> {
    serde_json::from_str(text)
}

/// DOT rendering: vertices in bucket order labelled by their sign
/// strings, undirected edges labelled by their dimension-1 vectors.
pub fn graph_to_dot(graph: &StrataGraph) -> String {
    let mut out = String::from("graph strata {\n");
    for (i, v) in graph.vertices.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{}\"];\n", v.compact()));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "  v{} -- v{} [label=\"{}\"];\n",
            e.endpoints.0, e.endpoints.1, e.label
        ));
    }
    out.push_str("}\n");
    out
}

/// Resolves an export selector: either an orbit index into the canonical
/// decomposition, or an explicit all-`±1` sign vector lifted through the
/// word.
pub fn resolve_z(word: &ReducedWord, selector: &str) -> crate::error::Result<SpinWeylElement> {
    use crate::error::Error;
    let selector = selector.trim();
    if let Ok(index) = selector.parse::<usize>() {
        let orbits = orbit_decomposition(word);
        if index >= orbits.len() {
            return Err(Error::OrbitIndexOutOfRange { index, count: orbits.len() });
        }
        return Ok(orbits[index].representative.clone());
    }
    let vector = crate::strata::AncestryVector::parse_vertex(selector)?;
    if !vector.is_vertex() {
        return Err(Error::Parse("sign vector must be all ±1".into()));
    }
    let z = crate::spin::lift_word(word, vector.entries())?;
    debug_assert!(coset(word).contains(&z));
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::lift_word;

    fn word(letters: &[usize], n: usize) -> ReducedWord {
        ReducedWord::new(letters.to_vec(), n).unwrap()
    }

    #[test]
    fn analysis_totals() {
        let w = word(&[1, 2, 3, 1, 2], 3);
        let report = analysis_report(&w, 1);
        assert_eq!(report.lift_total, 32);
        assert_eq!(report.permutation, "4312");
        assert_eq!(report.length, 5);
        assert_eq!(report.rank, 3);
        let orbit_total: usize = report.orbits.iter().map(|o| o.size).sum();
        assert_eq!(orbit_total, 16);
        let mut n_values: Vec<u64> = report
            .orbits
            .iter()
            .flat_map(|o| o.members.iter().map(|m| m.n_value))
            .collect();
        n_values.sort_unstable();
        assert_eq!(n_values.iter().sum::<u64>(), 32);
        assert!(n_values.contains(&3) && n_values.contains(&1));
    }

    #[test]
    fn analysis_of_seven_letter_word() {
        let w = word(&[2, 3, 1, 2, 4, 3, 2], 4);
        let report = analysis_report(&w, 2);
        assert_eq!(report.components_total, 40);
        assert_eq!(report.lift_total, 128);
        let mut sizes: Vec<usize> = report.orbits.iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![8, 8, 16]);
        assert_eq!(report.d2_preancestries.len(), 1);
        assert_eq!(report.d2_preancestries[0].positions, vec![1, 2, 6, 7]);
        assert_eq!(report.d2_preancestries[0].kind, "II");
    }

    #[test]
    fn report_json_round_trip() {
        let w = word(&[1, 2, 1], 2);
        let report = analysis_report(&w, 1);
        let json = report_to_json(&report);
        assert_eq!(report_from_json(&json).unwrap(), report);
        // Byte determinism.
        assert_eq!(json, report_to_json(&analysis_report(&w, 1)));
    }

    #[test]
    fn graph_json_round_trip_and_dot() {
        let w = word(&[1, 2, 3, 1, 2], 3);
        let z = lift_word(&w, &[-1, -1, 1, -1, 1]).unwrap();
        let graph = StrataGraph::build(&w, &z).unwrap();
        let export = graph_export(&graph);
        assert_eq!(export.vertices, vec!["--+-+", "-+-+-", "+----"]);
        assert_eq!(export.components, 1);
        let json = graph_to_json(&graph);
        assert_eq!(graph_from_json(&json).unwrap(), export);
        let dot = graph_to_dot(&graph);
        assert!(dot.starts_with("graph strata {"));
        assert!(dot.contains("v0 [label=\"--+-+\"];"));
        assert!(dot.contains("[label=\"(-1,-2,+1,-1,+2)\"];"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(dot.matches(" -- ").count(), 2);
    }

    #[test]
    fn empty_word_graph() {
        let w = ReducedWord::parse("").unwrap();
        let z = SpinWeylElement::one(0);
        let graph = StrataGraph::build(&w, &z).unwrap();
        assert_eq!(graph.vertices.len(), 1);
        assert!(graph.edges.is_empty());
        assert_eq!(graph.components(), 1);
    }

    #[test]
    fn selector_resolution() {
        let w = word(&[1, 2, 3, 1, 2], 3);
        let by_vector = resolve_z(&w, "--+-+").unwrap();
        assert_eq!(by_vector, lift_word(&w, &[-1, -1, 1, -1, 1]).unwrap());
        let by_commas = resolve_z(&w, "-1,-1,+1,-1,+1").unwrap();
        assert_eq!(by_commas, by_vector);
        let by_index = resolve_z(&w, "0").unwrap();
        assert_eq!(by_index, orbit_decomposition(&w)[0].representative);
        assert!(matches!(
            resolve_z(&w, "99"),
            Err(crate::error::Error::OrbitIndexOutOfRange { index: 99, count: _ })
        ));
        assert!(resolve_z(&w, "+-").is_err());
    }

    #[test]
    fn decorated_orbits_fill_isolated() {
        let w = word(&[2, 3, 1, 2, 4, 3, 2], 4);
        let orbits = decorated_orbits(&w, 1);
        assert!(orbits.iter().all(|o| o.isolated_count.is_some()));
        let base = crate::spin::lift_all_plus(&w);
        let base_orbit = orbits
            .iter()
            .find(|o| o.members.contains(&base))
            .expect("all-plus lift belongs to some orbit");
        assert_eq!(base_orbit.isolated_count, Some(2));
    }
}
