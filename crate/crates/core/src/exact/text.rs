//! Rendering of signed term lists as `3/2*y1^2*y2 - h + u*R`.

use super::scalar::Scalar;

/// Renders `coeff * factor^exp * …` terms in the given order.
/// Factors with exponent 0 are skipped; exponent 1 is written bare.
pub fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (Scalar, Vec<(&'a str, u32)>)>,
{
    let mut out = String::new();
    for (i, (c, factors)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> = factors
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(name, e)| {
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
