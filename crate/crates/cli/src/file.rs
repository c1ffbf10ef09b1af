//! JSON instance files.
//!
//! ```json
//! {"space": "line", "agents": ["0.9", "1.1"], "candidates": ["0", "2"], "k": 1}
//! {"space": "metric", "points": 3, "matrix": [["0","5","4"],["5","0","6"],["4","6","0"]],
//!  "agents": [1], "candidates": [2, 3], "k": 1}
//! ```
//!
//! Numbers are strings (decimal or `p/q`) parsed exactly; metric point
//! indices are one-based.

use facloc::model::DistanceMatrix;
use facloc::scalar::{exact_string, parse_scalar};
use facloc::{Instance, Point, Space};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Line {
        agents: Vec<String>,
        candidates: Vec<String>,
        k: usize,
    },
    Metric {
        points: usize,
        matrix: Vec<Vec<String>>,
        agents: Vec<usize>,
        candidates: Vec<usize>,
        k: usize,
    },
}

fn node(one_based: usize, points: usize) -> CliResult<usize> {
    if one_based == 0 || one_based > points {
        return Err(CliError::Parse(format!("point {one_based} is not in 1..={points}")));
    }
    Ok(one_based - 1)
}

impl InstanceFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_instance(&self) -> CliResult<Instance> {
        let scalars = |xs: &[String]| xs.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<_>, _>>();
        match self {
            InstanceFile::Line { agents, candidates, k } => {
                Ok(Instance::line(scalars(agents)?, scalars(candidates)?, *k)?)
            }
            InstanceFile::Metric {
                points,
                matrix,
                agents,
                candidates,
                k,
            } => {
                if matrix.len() != *points {
                    return Err(CliError::Parse(format!(
                        "matrix has {} rows but points = {points}",
                        matrix.len()
                    )));
                }
                let rows = matrix.iter().map(|r| scalars(r)).collect::<Result<Vec<_>, _>>()?;
                let matrix = DistanceMatrix::new(rows)?;
                let agents = agents.iter().map(|&a| node(a, *points)).collect::<CliResult<_>>()?;
                let candidates = candidates.iter().map(|&c| node(c, *points)).collect::<CliResult<_>>()?;
                Ok(Instance::metric(matrix, agents, candidates, *k)?)
            }
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        match instance.space() {
            Space::Line => {
                let coords = |ps: &[Point]| {
                    ps.iter()
                        .map(|p| exact_string(p.coordinate().expect("line point")))
                        .collect()
                };
                InstanceFile::Line {
                    agents: coords(instance.agents()),
                    candidates: coords(instance.candidates()),
                    k: instance.facilities(),
                }
            }
            Space::FiniteMetric(matrix) => {
                let nodes = |ps: &[Point]| {
                    ps.iter()
                        .map(|p| match p {
                            Point::Node(i) => i + 1,
                            Point::Line(_) => unreachable!("metric instance"),
                        })
                        .collect()
                };
                InstanceFile::Metric {
                    points: matrix.size(),
                    matrix: matrix
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(exact_string).collect())
                        .collect(),
                    agents: nodes(instance.agents()),
                    candidates: nodes(instance.candidates()),
                    k: instance.facilities(),
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use facloc::scalar::frac;

    #[test]
    fn parses_line_file_exactly() {
        let f = InstanceFile::parse(r#"{"space":"line","agents":["0.9","1.1"],"candidates":["0","4/3"],"k":1}"#)
            .unwrap();
        let inst = f.to_instance().unwrap();
        assert_eq!(inst.agents()[0], Point::Line(frac(9, 10)));
        assert_eq!(inst.candidates()[1], Point::Line(frac(4, 3)));
    }

    #[test]
    fn parses_metric_file_with_one_based_points() {
        let text = r#"{"space":"metric","points":2,"matrix":[["0","3"],["3","0"]],"agents":[1],"candidates":[2],"k":1}"#;
        let inst = InstanceFile::parse(text).unwrap().to_instance().unwrap();
        assert_eq!(inst.agents(), &[Point::Node(0)]);
        assert_eq!(inst.candidates(), &[Point::Node(1)]);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = [
            r#"{"space":"line","agents":["0"],"candidates":["1"],"k":1,"extra":true}"#,
            r#"{"space":"line","agents":[0.5],"candidates":["1"],"k":1}"#,
            r#"{"space":"plane","agents":["0"],"candidates":["1"],"k":1}"#,
            r#"{"space":"line","agents":["x"],"candidates":["1"],"k":1}"#,
            r#"{"space":"line","agents":["0"],"candidates":["1"],"k":3}"#,
            r#"{"space":"metric","points":2,"matrix":[["0","3"],["3","0"]],"agents":[0],"candidates":[2],"k":1}"#,
            r#"{"space":"metric","points":3,"matrix":[["0","3"],["3","0"]],"agents":[1],"candidates":[2],"k":1}"#,
            r#"{"space":"metric","points":2,"matrix":[["0","3"],["2","0"]],"agents":[1],"candidates":[2],"k":1}"#,
        ];
        for text in bad {
            let result = InstanceFile::parse(text).and_then(|f| f.to_instance());
            assert!(matches!(result, Err(CliError::Parse(_))), "{text}");
        }
    }
}
