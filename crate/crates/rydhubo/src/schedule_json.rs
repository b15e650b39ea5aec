//! `{"T": 10.0, "omega": [[t, v], ...], "delta": [[t, v], ...]}`

use serde::{Deserialize, Serialize};

use rydhubo_core::sim::Schedule;

use crate::error::FormatError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleJson {
    #[serde(rename = "T")]
    pub duration: f64,
    pub omega: Vec<[f64; 2]>,
    pub delta: Vec<[f64; 2]>,
}

impl From<&Schedule> for ScheduleJson {
    fn from(s: &Schedule) -> Self {
        let pts = |w: &[(f64, f64)]| w.iter().map(|&(t, v)| [t, v]).collect();
        ScheduleJson {
            duration: s.duration,
            omega: pts(&s.omega),
            delta: pts(&s.delta),
        }
    }
}

pub fn read_schedule_json(text: &str) -> Result<Schedule, FormatError> {
    let json: ScheduleJson = serde_json::from_str(text)?;
    let pts = |w: &[[f64; 2]]| w.iter().map(|&[t, v]| (t, v)).collect();
    Ok(Schedule::new(json.duration, pts(&json.omega), pts(&json.delta))?)
}

pub fn write_schedule_json(s: &Schedule) -> String {
    let mut out = serde_json::to_string_pretty(&ScheduleJson::from(s)).expect("schedule JSON is always serializable");
    out.push('\n');
    out
}
