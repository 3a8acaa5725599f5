//! Parser harnesses shared by the fuzz targets. Each takes raw bytes, ignores non-UTF-8 input,
//! and panics only when a successful parse fails to round-trip.

use capvertex::combinat::Partition;
use capvertex::exactalg::domain::{check_generic, parse_assignment};
use capvertex::exactalg::text::{parse_scalar, render_scalar};
use capvertex::fock;
use capvertex::pipeline::Conventions;

pub fn scalar_text(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_scalar(s) {
        let text = render_scalar(&x);
        let back = parse_scalar(&text).unwrap_or_else(|e| panic!("rendered {text:?} does not parse: {e}"));
        assert_eq!(back, x, "{text}");
    }
}

pub fn partition_text(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Partition>() {
        let back: Partition = p.to_string().parse().expect("rendered partition parses");
        assert_eq!(back, p);
        assert_eq!(p.conjugate().conjugate(), p);
    }
}

pub fn specialize_arg(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let vals: Result<Vec<_>, _> = s.split(',').map(parse_assignment).collect();
    if let Ok(vals) = vals {
        let _ = check_generic(&vals);
    }
}

pub fn conventions_json(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Conventions::from_json(s) {
        let back = Conventions::from_json(&c.to_json()).expect("written conventions parse");
        assert_eq!(back, c);
    }
}

pub fn series_json(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = fock::from_json(s) {
        let doc: serde_json::Value = serde_json::from_str(s).expect("accepted document is JSON");
        let order = |k: &str| doc[k].as_u64().expect("accepted document has orders") as u32;
        let text = fock::to_json(&f, order("y_order"), order("z_order"));
        assert_eq!(fock::from_json(&text).expect("written document parses"), f);
    }
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    fn seeds(target: &str) -> Vec<Vec<u8>> {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(target);
        let mut out: Vec<Vec<u8>> = fs::read_dir(dir).unwrap().map(|e| fs::read(e.unwrap().path()).unwrap()).collect();
        assert!(!out.is_empty());
        out.sort();
        out
    }

    #[test]
    fn corpus_seeds_run_clean() {
        let targets: [(&str, fn(&[u8])); 5] = [
            ("scalar_text", super::scalar_text),
            ("partition_text", super::partition_text),
            ("specialize_arg", super::specialize_arg),
            ("conventions_json", super::conventions_json),
            ("series_json", super::series_json),
        ];
        for (name, f) in targets {
            for seed in seeds(name) {
                f(&seed);
            }
        }
    }

    #[test]
    fn hostile_scalars() {
        for s in [
            "t1^2147483647*t1^2147483647",
            "(t1^1000000000 - 1)/(t1^999999999 - 1)",
            "a^(-1/2)*a^(1/2)",
            "99999999999999999999999999999*q",
            "((t1))",
            "t1^(1/0)",
            "(t1^1024 - 1)/(t1^1023 - 1)",
            "t1^1024*t1^1",
            "(t1^1000*t2^-1000 - 1)/(t1^-1000 - t2^1000)",
            "-",
            "",
        ] {
            super::scalar_text(s.as_bytes());
        }
    }

    /// Byte-level mutations of the seeds, standing in for a short fuzzing run.
    #[test]
    fn mutated_seeds_run_clean() {
        let targets: [(&str, fn(&[u8])); 5] = [
            ("scalar_text", super::scalar_text),
            ("partition_text", super::partition_text),
            ("specialize_arg", super::specialize_arg),
            ("conventions_json", super::conventions_json),
            ("series_json", super::series_json),
        ];
        let alphabet = b"0123456789-+*/^(),=t12quaxyz {}[]\":.e";
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (name, f) in targets {
            for seed in seeds(name) {
                for _ in 0..300 {
                    let mut bytes = seed.clone();
                    for _ in 0..1 + next() % 4 {
                        let pos = if bytes.is_empty() { 0 } else { (next() as usize) % bytes.len() };
                        let c = alphabet[(next() as usize) % alphabet.len()];
                        match next() % 3 {
                            0 if !bytes.is_empty() => bytes[pos] = c,
                            1 if !bytes.is_empty() => {
                                bytes.remove(pos);
                            }
                            _ => bytes.insert(pos, c),
                        }
                    }
                    f(&bytes);
                }
            }
        }
    }
}
