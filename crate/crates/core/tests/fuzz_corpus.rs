//! Replays the checked-in fuzz seeds through the same parsers.

use std::fs;
use std::path::PathBuf;

use domestic_ar::cyclo::Cyclo;
use domestic_ar::fusion::FusionDatum;
use domestic_ar::graph::AffineType;
use domestic_ar::groups::Family;
use domestic_ar::quiver::Quiver;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn quiver_seeds_round_trip() {
    for (name, text) in seeds("quiver_json") {
        let q = Quiver::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap().to_json(), q.to_json());
    }
}

#[test]
fn fusion_seeds_verify() {
    for (name, text) in seeds("fusion_json") {
        let d = FusionDatum::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(FusionDatum::from_json(&serde_json::to_string(&d).unwrap()).unwrap(), d);
    }
}

#[test]
fn cyclo_seeds_parse() {
    for (name, text) in seeds("cyclo_json") {
        let c: Cyclo = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let back: Cyclo = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn family_seeds() {
    let mut parsed = 0;
    for (_, text) in seeds("family_parse") {
        if let Ok(f) = text.parse::<Family>() {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            parsed += 1;
        }
        if let Ok(t) = text.parse::<AffineType>() {
            assert_eq!(t.to_string().parse::<AffineType>().unwrap(), t);
            parsed += 1;
        }
    }
    // E~9 is the only rejected seed
    assert_eq!(parsed, 8);
}
