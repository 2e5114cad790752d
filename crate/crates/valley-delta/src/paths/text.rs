//! Plain-text path format: `area=0,1,1,0 labels=1,2,0,3 dv=3,7` with an
//! empty `dv=` for undecorated paths. This is the wire format of the CLI.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{LabelledPath, PathError};

impl fmt::Display for LabelledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(",");
        write!(
            f,
            "area={} labels={} dv={}",
            join(&mut self.area_word().iter().map(|a| a.to_string())),
            join(&mut self.labels().iter().map(|w| w.to_string())),
            join(&mut self.decorations().iter().map(|d| d.to_string())),
        )
    }
}

impl FromStr for LabelledPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut area = None;
        let mut labels = None;
        let mut dv = None;
        for field in s.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| PathError::Parse(format!("expected key=value, got '{field}'")))?;
            match key {
                "area" => area = Some(parse_list::<u8>(value)?),
                "labels" => labels = Some(parse_list::<u8>(value)?),
                "dv" => dv = Some(parse_list::<usize>(value)?),
                other => return Err(PathError::Parse(format!("unknown field '{other}'"))),
            }
        }
        let area = area.ok_or_else(|| PathError::Parse("missing 'area' field".into()))?;
        let labels = labels.ok_or_else(|| PathError::Parse("missing 'labels' field".into()))?;
        let dv: BTreeSet<usize> = dv.unwrap_or_default().into_iter().collect();
        LabelledPath::new(area, labels, dv)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, PathError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| PathError::Parse(format!("bad list entry '{part}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "area=0,1,1,0,1,2,1,1 labels=1,2,4,0,5,6,0,3 dv=3,7";
        let p: LabelledPath = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(p.area(), 7);
    }

    #[test]
    fn empty_decorations() {
        let p: LabelledPath = "area=0,1 labels=1,2 dv=".parse().unwrap();
        assert!(p.decorations().is_empty());
        assert_eq!(p.to_string(), "area=0,1 labels=1,2 dv=");
    }

    #[test]
    fn empty_path() {
        let p: LabelledPath = "area= labels= dv=".parse().unwrap();
        assert_eq!(p, LabelledPath::empty());
    }

    #[test]
    fn invalid_input_is_rejected() {
        assert!("area=0,2 labels=1,2 dv=".parse::<LabelledPath>().is_err());
        assert!("area=0 dv=".parse::<LabelledPath>().is_err());
        assert!("area=0 labels=x dv=".parse::<LabelledPath>().is_err());
        assert!("area=0 labels=1 dv=1".parse::<LabelledPath>().is_err());
    }
}
