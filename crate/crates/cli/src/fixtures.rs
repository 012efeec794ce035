//! Named JSON fixtures: charts, adapted tracks and pants curves.

use curvetrack::traintrack::{adapted_track, Builtin};
use serde_json::{json, Value};

use crate::HarnessError;

pub const FIXTURES: [&str; 6] = [
    "s05-chart",
    "s05-adapted",
    "s05-pants",
    "s12-chart",
    "s12-adapted",
    "s12-pants",
];

pub fn emit_fixture(name: &str) -> Result<Value, HarnessError> {
    let unknown = || HarnessError::UnknownFixture(name.to_string());
    let (id, kind) = name.split_once('-').ok_or_else(unknown)?;
    let surface = Builtin::ALL.into_iter().find(|b| b.id() == id).ok_or_else(unknown)?;
    let chart = surface.chart();
    match kind {
        "chart" => Ok(serde_json::to_value(chart.to_json())?),
        "adapted" => {
            let at = adapted_track(surface)?;
            Ok(json!({
                "surface": id,
                "chart": chart.to_json(),
                "track": at.track.to_json(Some(&chart)),
                "connectors": at.connectors,
                "pantsMeasures": at.pants_measures,
            }))
        }
        "pants" => {
            let at = adapted_track(surface)?;
            let curves: Vec<_> = at.pants.iter().map(|c| c.to_json(&chart)).collect();
            Ok(serde_json::to_value(curves)?)
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_fixtures_have_euler_edge_counts() {
        let edges = |n: &str| emit_fixture(n).unwrap()["edges"].as_array().unwrap().len();
        assert_eq!(edges("s05-chart"), 9);
        assert_eq!(edges("s12-chart"), 6);
    }

    #[test]
    fn adapted_fixture_lists_connectors() {
        let v = emit_fixture("s05-adapted").unwrap();
        assert_eq!(v["connectors"].as_array().unwrap().len(), 2);
        assert_eq!(v["track"]["branches"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn unknown_names_are_rejected() {
        for n in ["s05", "s07-chart", "s12-track", ""] {
            assert!(matches!(emit_fixture(n), Err(HarnessError::UnknownFixture(_))));
        }
    }

    #[test]
    fn every_listed_fixture_emits() {
        for n in FIXTURES {
            emit_fixture(n).unwrap();
        }
    }
}
