//! JSON scheme configs, discrete distributions and gap certificates.
//!
//! A scheme config is an object tagged by `"variant"`:
//!
//! ```json
//! {"variant": "ckr", "k": 4}
//! {"variant": "independent_uniform", "k": 3, "use_last_slice": true}
//! {"variant": "ball_corner", "ball_prob": 0.72727, "ray_variant": "sparc_equivalent"}
//! {"variant": "icut_corner", "k": 6, "corner_at": 0.5454, "icut_prob": 0.667186, "use_last_slice": true}
//! {"variant": "discrete", "table": "dist.json"}
//! {"variant": "mixture", "components": [{"weight": 0.5, "scheme": {"variant": "ckr", "k": 3}}]}
//! ```
//!
//! Omitted parameters take their defaults. A discrete scheme names a
//! distribution file (`table`, relative to the config) or embeds one
//! (`distribution`).

use std::path::Path;

use mwc_core::graph::MeshGraph;
use mwc_core::schemes::{BallVariant, SchemeConfig, BALL_PROB, ICUT_CORNER, ICUT_PROB};
use mwc_core::search::{DiscreteDistribution, DiscreteEntry, DiscreteSparc, GapCertificate};
use serde::{Deserialize, Serialize};

use super::FormatError;

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum RayVariant {
    SparcEquivalent,
    IndependentRays,
}

fn default_true() -> bool {
    true
}

fn default_ball_prob() -> f64 {
    BALL_PROB
}

fn default_corner() -> f64 {
    ICUT_CORNER
}

fn default_icut_prob() -> f64 {
    ICUT_PROB
}

fn default_ray_variant() -> RayVariant {
    RayVariant::SparcEquivalent
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
enum SchemeFile {
    Ckr {
        k: usize,
    },
    IndependentUniform {
        k: usize,
        #[serde(default = "default_true")]
        use_last_slice: bool,
    },
    BallCorner {
        #[serde(default = "default_ball_prob")]
        ball_prob: f64,
        #[serde(default = "default_ray_variant")]
        ray_variant: RayVariant,
    },
    IcutCorner {
        k: usize,
        #[serde(default = "default_corner")]
        corner_at: f64,
        #[serde(default = "default_icut_prob")]
        icut_prob: f64,
        #[serde(default = "default_true")]
        use_last_slice: bool,
    },
    Discrete {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        distribution: Option<DistributionFile>,
    },
    Mixture {
        components: Vec<ComponentFile>,
    },
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    weight: f64,
    scheme: SchemeFile,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    k: usize,
    #[serde(rename = "N")]
    n: usize,
    bound: f64,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    q: Vec<usize>,
    p: f64,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "W")]
    w: f64,
    gap: f64,
    /// `[u, v, w]` in primal node ids.
    weights: Vec<(usize, usize, f64)>,
}

impl DistributionFile {
    fn from_core(d: &DiscreteDistribution) -> Self {
        DistributionFile {
            k: d.k(),
            n: d.n(),
            bound: d.bound(),
            entries: d
                .entries()
                .iter()
                .map(|e| EntryFile {
                    q: e.sparc.q.clone(),
                    p: e.p,
                })
                .collect(),
        }
    }

    fn into_core(self) -> Result<DiscreteDistribution, FormatError> {
        let entries = self
            .entries
            .into_iter()
            .map(|e| DiscreteEntry {
                sparc: DiscreteSparc { q: e.q },
                p: e.p,
            })
            .collect();
        Ok(DiscreteDistribution::new(self.k, self.n, entries, self.bound)?)
    }
}

fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl SchemeFile {
    fn from_core(cfg: &SchemeConfig) -> Self {
        match cfg {
            SchemeConfig::Ckr { k } => SchemeFile::Ckr { k: *k },
            SchemeConfig::IndependentUniform { k, use_last_slice } => SchemeFile::IndependentUniform {
                k: *k,
                use_last_slice: *use_last_slice,
            },
            SchemeConfig::BallCorner { ball_prob, variant } => SchemeFile::BallCorner {
                ball_prob: *ball_prob,
                ray_variant: match variant {
                    BallVariant::SparcEquivalent => RayVariant::SparcEquivalent,
                    BallVariant::IndependentRays => RayVariant::IndependentRays,
                },
            },
            SchemeConfig::IcutCorner {
                k,
                corner_at,
                icut_prob,
                use_last_slice,
            } => SchemeFile::IcutCorner {
                k: *k,
                corner_at: *corner_at,
                icut_prob: *icut_prob,
                use_last_slice: *use_last_slice,
            },
            SchemeConfig::Discrete(d) => SchemeFile::Discrete {
                table: None,
                distribution: Some(DistributionFile::from_core(d)),
            },
            SchemeConfig::Mixture(parts) => SchemeFile::Mixture {
                components: parts
                    .iter()
                    .map(|(w, c)| ComponentFile {
                        weight: *w,
                        scheme: SchemeFile::from_core(c),
                    })
                    .collect(),
            },
        }
    }

    fn into_core(self, base: Option<&Path>) -> Result<SchemeConfig, FormatError> {
        Ok(match self {
            SchemeFile::Ckr { k } => SchemeConfig::Ckr { k },
            SchemeFile::IndependentUniform { k, use_last_slice } => SchemeConfig::IndependentUniform { k, use_last_slice },
            SchemeFile::BallCorner { ball_prob, ray_variant } => SchemeConfig::BallCorner {
                ball_prob,
                variant: match ray_variant {
                    RayVariant::SparcEquivalent => BallVariant::SparcEquivalent,
                    RayVariant::IndependentRays => BallVariant::IndependentRays,
                },
            },
            SchemeFile::IcutCorner {
                k,
                corner_at,
                icut_prob,
                use_last_slice,
            } => SchemeConfig::IcutCorner {
                k,
                corner_at,
                icut_prob,
                use_last_slice,
            },
            SchemeFile::Discrete { table, distribution } => match (table, distribution) {
                (None, Some(d)) => SchemeConfig::Discrete(d.into_core()?),
                (Some(t), None) => {
                    let path = match base {
                        Some(b) => b.join(&t),
                        None => t.into(),
                    };
                    SchemeConfig::Discrete(parse_distribution(&read_file(&path)?)?)
                }
                _ => {
                    return Err(mwc_core::Error::InvalidConfig(
                        "discrete scheme needs exactly one of `table` and `distribution`".into(),
                    )
                    .into())
                }
            },
            SchemeFile::Mixture { components } => SchemeConfig::Mixture(
                components
                    .into_iter()
                    .map(|c| Ok((c.weight, c.scheme.into_core(base)?)))
                    .collect::<Result<_, FormatError>>()?,
            ),
        })
    }
}

/// Reads a scheme config; `table` paths resolve against `base`.
pub fn parse_scheme(text: &str, base: Option<&Path>) -> Result<SchemeConfig, FormatError> {
    let f: SchemeFile = serde_json::from_str(text)?;
    let cfg = f.into_core(base)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Discrete tables are written inline.
pub fn write_scheme(cfg: &SchemeConfig) -> String {
    serde_json::to_string_pretty(&SchemeFile::from_core(cfg)).expect("scheme serializes") + "\n"
}

pub fn parse_distribution(text: &str) -> Result<DiscreteDistribution, FormatError> {
    serde_json::from_str::<DistributionFile>(text)?.into_core()
}

pub fn write_distribution(d: &DiscreteDistribution) -> String {
    serde_json::to_string_pretty(&DistributionFile::from_core(d)).expect("distribution serializes") + "\n"
}

pub fn parse_certificate(text: &str) -> Result<GapCertificate, FormatError> {
    let f: CertificateFile = serde_json::from_str(text)?;
    let skeleton = MeshGraph::<f64>::uniform(f.m, 0.0)?;
    let mut weights = vec![None; skeleton.edges().len()];
    for &(u, v, w) in &f.weights {
        let e = skeleton
            .edge_between(u, v)
            .ok_or_else(|| mwc_core::Error::InvalidGraph(format!("{u} - {v} is not a mesh edge")))?;
        if weights[e].replace(w).is_some() {
            return Err(mwc_core::Error::InvalidGraph(format!("edge {u} - {v} listed twice")).into());
        }
    }
    let weights: Vec<f64> = weights.into_iter().map(|w| w.unwrap_or(0.0)).collect();
    MeshGraph::new(f.m, weights.clone())?;
    Ok(GapCertificate {
        m: f.m,
        weights,
        w_total: f.w,
        gap_lower_bound: f.gap,
    })
}

/// Every mesh edge is listed, zero weights included.
pub fn write_certificate(c: &GapCertificate) -> Result<String, FormatError> {
    let mesh = c.mesh()?;
    let weights = mesh
        .edges()
        .iter()
        .zip(&c.weights)
        .map(|(&(u, v), &w)| (u, v, w))
        .collect();
    let f = CertificateFile {
        m: c.m,
        w: c.w_total,
        gap: c.gap_lower_bound,
        weights,
    };
    Ok(serde_json::to_string_pretty(&f)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let cfg = parse_scheme(r#"{"variant": "ball_corner"}"#, None).unwrap();
        assert_eq!(cfg, SchemeConfig::ball_corner());
        let cfg = parse_scheme(r#"{"variant": "icut_corner", "k": 6}"#, None).unwrap();
        assert_eq!(cfg, SchemeConfig::icut_corner(6));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(parse_scheme(r#"{"variant": "nope"}"#, None), Err(FormatError::Json(_))));
        assert!(matches!(parse_scheme(r#"{"variant": "ckr", "k": 3, "x": 1}"#, None), Err(FormatError::Json(_))));
        assert!(matches!(parse_scheme(r#"{"variant": "ckr", "k": 1}"#, None), Err(FormatError::Invalid(_))));
        assert!(parse_scheme(r#"{"variant": "discrete"}"#, None).is_err());
        assert!(matches!(
            parse_scheme(r#"{"variant": "discrete", "table": "/nonexistent/t.json"}"#, None),
            Err(FormatError::Io { .. })
        ));
    }

    #[test]
    fn mixture_round_trip() {
        let cfg = SchemeConfig::Mixture(vec![
            (0.25, SchemeConfig::Ckr { k: 3 }),
            (0.75, SchemeConfig::IndependentUniform { k: 3, use_last_slice: false }),
        ]);
        assert_eq!(parse_scheme(&write_scheme(&cfg), None).unwrap(), cfg);
    }

    #[test]
    fn table_reference() {
        let dir = tempfile::tempdir().unwrap();
        let d = DiscreteDistribution::new(
            3,
            3,
            vec![DiscreteEntry {
                sparc: DiscreteSparc { q: vec![0, 2] },
                p: 1.0,
            }],
            1.5,
        )
        .unwrap();
        std::fs::write(dir.path().join("t.json"), write_distribution(&d)).unwrap();
        let cfg = parse_scheme(r#"{"variant": "discrete", "table": "t.json"}"#, Some(dir.path())).unwrap();
        assert_eq!(cfg, SchemeConfig::Discrete(d));
    }

    #[test]
    fn certificate_round_trip() {
        let mesh = MeshGraph::<f64>::uniform(2, 0.5).unwrap();
        let c = GapCertificate {
            m: 2,
            weights: mesh.weights().to_vec(),
            w_total: 4.5,
            gap_lower_bound: 1.0 / 4.5,
        };
        assert_eq!(parse_certificate(&write_certificate(&c).unwrap()).unwrap(), c);
        let bad = r#"{"M": 2, "W": 1, "gap": 1, "weights": [[0, 5, 1.0]]}"#;
        assert!(parse_certificate(bad).is_err());
    }
}
