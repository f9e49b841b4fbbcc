use super::JordanComponent;

pub(super) fn component(c: &JordanComponent) -> String {
    let q = c.prime.checked_pow(c.exponent).map_or_else(
        || format!("{}^{}", c.prime, c.exponent),
        |q| q.to_string(),
    );
    let s = if c.sign < 0 { '-' } else { '+' };
    if c.prime == 2 {
        match c.oddity {
            Some(t) => format!("{q}_{t}^{s}{}", c.rank),
            None => format!("{q}_II^{s}{}", c.rank),
        }
    } else {
        format!("{q}^{s}{}", c.rank)
    }
}

/// Space separated components; the trivial form renders as `1`.
pub(super) fn render(comps: &[JordanComponent]) -> String {
    if comps.is_empty() {
        return "1".into();
    }
    comps.iter().map(component).collect::<Vec<_>>().join(" ")
}
