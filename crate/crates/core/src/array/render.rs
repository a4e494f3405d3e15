use super::AssociativeArray;
use crate::value::Value;

fn is_numeric(v: &Value) -> bool {
    matches!(v, Value::Real(_) | Value::Int(_) | Value::NegInf | Value::PosInf)
}

/// Aligned text table. Zeros print blank; numeric cells are right-aligned,
/// everything else left-aligned.
pub fn render_table(arr: &AssociativeArray) -> String {
    let alg = arr.algebra();
    let mut cells: Vec<Vec<(String, bool)>> = vec![vec![(String::new(), false); arr.cols().len()]; arr.rows().len()];
    for (&(r, c), v) in arr.ranked_entries() {
        cells[r][c] = (alg.render(v), is_numeric(v));
    }
    let row_width = arr.rows().iter().map(|k| k.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = arr
        .cols()
        .iter()
        .enumerate()
        .map(|(c, key)| {
            cells
                .iter()
                .map(|row| row[c].0.chars().count())
                .chain(std::iter::once(key.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = String::new();
    out.push_str(&" ".repeat(row_width));
    for (key, w) in arr.cols().iter().zip(&widths) {
        out.push_str("  ");
        out.push_str(&format!("{key:>w$}"));
    }
    out.push('\n');
    for (r, key) in arr.rows().iter().enumerate() {
        out.push_str(&format!("{key:<row_width$}"));
        for (c, w) in widths.iter().enumerate() {
            let (text, numeric) = &cells[r][c];
            out.push_str("  ");
            if *numeric {
                out.push_str(&format!("{text:>w$}"));
            } else {
                out.push_str(&format!("{text:<w$}"));
            }
        }
        out.push('\n');
    }
    out
}
