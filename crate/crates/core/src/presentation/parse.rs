use super::{CyclicTuple, Letter, PolygonalPresentation};
use crate::error::{Error, Result};

/// Parses the presentation file format.
///
/// ```text
/// # comment
/// k=3
/// q=15
/// (1,2,7)
/// ```
///
/// `k`, `q` and `n` headers are optional. Without `k` the first tuple fixes
/// the arity; without `q` the largest letter is used. `n` defaults to 1.
pub fn parse_presentation(text: &str) -> Result<PolygonalPresentation> {
    let mut k: Option<usize> = None;
    let mut q: Option<usize> = None;
    let mut n: usize = 1;
    let mut tuples = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse { line: lineno + 1, message };
        if let Some((key, value)) = line.split_once('=') {
            let value: usize =
                value.trim().parse().map_err(|_| bad(format!("bad header value {:?}", value.trim())))?;
            match key.trim() {
                "k" => k = Some(value),
                "q" => q = Some(value),
                "n" => n = value,
                other => return Err(bad(format!("unknown header {other:?}"))),
            }
            continue;
        }
        let inner = line
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad(format!("expected `(i,j,...)`, got {line:?}")))?;
        let mut letters = Vec::new();
        for field in inner.split(',') {
            let field = field.trim();
            let value: i64 = field.parse().map_err(|_| bad(format!("bad letter {field:?}")))?;
            if value < 1 {
                return Err(bad(format!("letter index {value} is below 1")));
            }
            let value = u32::try_from(value).map_err(|_| bad(format!("letter index {value} too large")))?;
            letters.push(Letter(value));
        }
        let arity = *k.get_or_insert(letters.len());
        if letters.len() != arity {
            return Err(bad(format!("tuple has {} letters, expected {arity}", letters.len())));
        }
        if let Some(q) = q {
            if let Some(l) = letters.iter().find(|l| l.index() > q) {
                return Err(bad(format!("letter {} exceeds q={q}", l.0)));
            }
        }
        tuples.push(CyclicTuple(letters));
    }

    let q = q.unwrap_or_else(|| tuples.iter().flat_map(|t| t.0.iter()).map(|l| l.index()).max().unwrap_or(0));
    PolygonalPresentation::new(q, k.unwrap_or(3), n, tuples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{T1_TEXT, T2_TEXT};

    #[test]
    fn single_tuple() {
        let p = parse_presentation("k=3\n(1,2,7)\n").unwrap();
        assert_eq!(p.tuples, vec![CyclicTuple::from_indices(&[1, 2, 7])]);
        assert_eq!(p.q, 7);
        assert!(!p.closed);
    }

    #[test]
    fn embedded_texts() {
        let t1 = parse_presentation(T1_TEXT).unwrap();
        assert_eq!((t1.q, t1.k, t1.n, t1.tuples.len()), (15, 3, 1, 15));
        assert_eq!(t1.tuples[4], CyclicTuple::from_indices(&[12, 4, 2]));
        let t2 = parse_presentation(T2_TEXT).unwrap();
        assert_eq!(t2.tuples[0], CyclicTuple::from_indices(&[1, 10, 1]));
        assert_eq!(parse_presentation(&t2.to_text()).unwrap(), t2);
    }

    #[test]
    fn arity_mismatch_is_reported_with_line() {
        let err = parse_presentation("k=3\n(1,2)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_presentation("(1,2,3)\n(1,2,3,4)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn bad_letters_and_lines() {
        assert!(matches!(parse_presentation("(0,1,2)").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_presentation("(-3,1,2)").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_presentation("q=3\n(1,2,4)").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_presentation("1,2,3").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_presentation("z=3").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn declared_q_wins() {
        let p = parse_presentation("q=20\n( 1, 2, 3 )  # spaces ok\n").unwrap();
        assert_eq!(p.q, 20);
    }
}
