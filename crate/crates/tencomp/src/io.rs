//! Text instance format and seeded random instance generation.
//!
//! The format is line-oriented, whitespace-separated, with one-based index
//! tuples and full-precision decimal values:
//!
//! ```text
//! tcp 1
//! order 3
//! dim 2
//! tensor 4
//! 1 1 1 1
//! 1 2 2 -1
//! 2 1 1 -2
//! 2 2 2 1
//! q
//! 2 2
//! ```
//!
//! Lines starting with `#` are ignored anywhere. Duplicate coordinate lines
//! sum. Values are written with 17 significant digits so that
//! `parse(write(inst)) == inst` bit for bit.

use thiserror::Error;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::TcpInstance;
use crate::spectral::grid_oracle;
use crate::tensor::Tensor;

#[derive(Debug, Error, PartialEq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid generator parameters: {0}")]
    Gen(String),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        msg: msg.into(),
    })
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next non-empty, non-comment line as (1-based line number, tokens).
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.iter.by_ref() {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((idx + 1, trimmed.split_whitespace().collect()));
        }
        None
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, IoError> {
    tok.parse()
        .map_err(|_| IoError::Parse {
            line,
            msg: format!("expected {what}, got `{tok}`"),
        })
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64, IoError> {
    tok.parse()
        .map_err(|_| IoError::Parse {
            line,
            msg: format!("expected {what}, got `{tok}`"),
        })
}

fn expect_keyword(
    lines: &mut Lines,
    keyword: &str,
    arg: &str,
) -> Result<(usize, usize), IoError> {
    match lines.next_tokens() {
        Some((line, tokens)) if tokens.len() == 2 && tokens[0] == keyword => {
            Ok((line, parse_usize(tokens[1], line, arg)?))
        }
        Some((line, tokens)) => err(line, format!("expected `{keyword} <{arg}>`, got `{}`", tokens.join(" "))),
        None => err(0, format!("unexpected end of file, expected `{keyword} <{arg}>`")),
    }
}

pub fn parse_instance(text: &str) -> Result<TcpInstance, IoError> {
    let mut lines = Lines::new(text);

    match lines.next_tokens() {
        Some((_, tokens)) if tokens == ["tcp", "1"] => {}
        Some((line, tokens)) => {
            return err(line, format!("expected header `tcp 1`, got `{}`", tokens.join(" ")))
        }
        None => return err(0, "empty file"),
    }
    let (line_m, order) = expect_keyword(&mut lines, "order", "m")?;
    if order < 2 {
        return err(line_m, format!("order must be at least 2, got {order}"));
    }
    let (line_n, dim) = expect_keyword(&mut lines, "dim", "n")?;
    if dim < 1 {
        return err(line_n, format!("dim must be at least 1, got {dim}"));
    }
    let (_, nnz) = expect_keyword(&mut lines, "tensor", "nnz")?;

    let mut coo: Vec<(Vec<usize>, f64)> = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        let (line, tokens) = match lines.next_tokens() {
            Some(v) => v,
            None => return err(0, format!("unexpected end of file inside {nnz} tensor entries")),
        };
        if tokens.len() != order + 1 {
            return err(
                line,
                format!("expected {order} indices and a value, got {} tokens", tokens.len()),
            );
        }
        let mut idx = Vec::with_capacity(order);
        for tok in &tokens[..order] {
            let one_based = parse_usize(tok, line, "index")?;
            if one_based == 0 || one_based > dim {
                return err(line, format!("index {one_based} out of range 1..={dim}"));
            }
            idx.push(one_based - 1);
        }
        let value = parse_f64(tokens[order], line, "entry value")?;
        coo.push((idx, value));
    }

    match lines.next_tokens() {
        Some((_, tokens)) if tokens == ["q"] => {}
        Some((line, tokens)) => return err(line, format!("expected `q`, got `{}`", tokens.join(" "))),
        None => return err(0, "unexpected end of file, expected `q`"),
    }
    let (line_q, tokens) = match lines.next_tokens() {
        Some(v) => v,
        None => return err(0, "unexpected end of file, expected q values"),
    };
    if tokens.len() != dim {
        return err(line_q, format!("q has {} values, dim is {dim}", tokens.len()));
    }
    let q = tokens
        .iter()
        .map(|tok| parse_f64(tok, line_q, "q value"))
        .collect::<Result<Vec<f64>, _>>()?;

    if let Some((line, tokens)) = lines.next_tokens() {
        return err(line, format!("unexpected trailing content `{}`", tokens.join(" ")));
    }

    let tensor = Tensor::from_coo(order, dim, &coo)
        .map_err(|e| IoError::Parse { line: 0, msg: e.to_string() })?;
    TcpInstance::new(tensor, q).map_err(|e| IoError::Parse { line: line_q, msg: e.to_string() })
}

pub fn write_instance(inst: &TcpInstance) -> String {
    let order = inst.order();
    let dim = inst.dim();
    let entries = inst.tensor().entries();
    let mut body = String::new();
    let mut nnz = 0usize;
    let mut idx = vec![0usize; order];
    for (flat, &v) in entries.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        nnz += 1;
        let mut rest = flat;
        for slot in idx.iter_mut().rev() {
            *slot = rest % dim;
            rest /= dim;
        }
        for i in &idx {
            body.push_str(&format!("{} ", i + 1));
        }
        body.push_str(&format!("{:.16e}\n", v));
    }
    let q = inst
        .q()
        .iter()
        .map(|v| format!("{:.16e}", v))
        .collect::<Vec<_>>()
        .join(" ");
    format!("tcp 1\norder {order}\ndim {dim}\ntensor {nnz}\n{body}q\n{q}\n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    General,
    Symmetric,
    /// Diagonal with strictly positive diagonal entries.
    DiagonalPd,
    /// Symmetric with the diagonal boosted until the grid oracle certifies a
    /// positive smallest Z-eigenvalue (dimensions 2 and 3, even order).
    SymmetricPd,
}

/// Deterministic random instance for a fixed seed. `q` entries are uniform
/// in (-1, 1); tensor entries are uniform in (-1, 1) and kept with
/// probability `density` (the diagonal of `diagonal_pd` is always full).
pub fn gen_random(
    order: usize,
    dim: usize,
    density: f64,
    seed: u64,
    kind: GenKind,
) -> Result<TcpInstance, IoError> {
    if order < 2 {
        return Err(IoError::Gen(format!("order must be at least 2, got {order}")));
    }
    if dim < 1 {
        return Err(IoError::Gen(format!("dim must be at least 1, got {dim}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(IoError::Gen(format!("density must be in (0, 1], got {density}")));
    }
    if kind == GenKind::SymmetricPd {
        if dim > 3 {
            return Err(IoError::Gen(
                "symmetric_pd requires dim <= 3 (no oracle certification above)".into(),
            ));
        }
        if !order.is_multiple_of(2) {
            return Err(IoError::Gen(
                "symmetric_pd requires even order (odd-order forms are sign-indefinite)".into(),
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tensor = Tensor::zeros(order, dim).map_err(|e| IoError::Gen(e.to_string()))?;

    match kind {
        GenKind::General => {
            let mut idx = vec![0usize; order];
            fill_general(&mut tensor, &mut idx, 0, dim, density, &mut rng);
        }
        GenKind::Symmetric | GenKind::SymmetricPd => {
            fill_symmetric(&mut tensor, order, dim, density, &mut rng);
        }
        GenKind::DiagonalPd => {
            for i in 0..dim {
                // uniform in (0, 1]
                let v = 1.0 - rng.random_range(0.0..1.0);
                tensor.add_at(&vec![i; order], v);
            }
        }
    }

    let q: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();

    if kind == GenKind::SymmetricPd {
        let resolution = if dim == 2 { 2000 } else { 180 };
        let mut boost = 0.0;
        for _ in 0..64 {
            let candidate = boosted_diagonal(&tensor, boost);
            let scan = grid_oracle(&candidate, resolution).map_err(|e| IoError::Gen(e.to_string()))?;
            if scan.min.lambda - scan.error_bound > 0.0 {
                return TcpInstance::new(candidate, q).map_err(|e| IoError::Gen(e.to_string()));
            }
            boost = if boost == 0.0 { 1.0 } else { boost * 2.0 };
        }
        return Err(IoError::Gen("positive definiteness certification did not converge".into()));
    }

    TcpInstance::new(tensor, q).map_err(|e| IoError::Gen(e.to_string()))
}

fn boosted_diagonal(base: &Tensor, boost: f64) -> Tensor {
    let mut t = base.clone();
    for i in 0..base.dim() {
        t.add_at(&vec![i; base.order()], boost);
    }
    t
}

fn fill_general(
    tensor: &mut Tensor,
    idx: &mut Vec<usize>,
    pos: usize,
    dim: usize,
    density: f64,
    rng: &mut ChaCha8Rng,
) {
    if pos == idx.len() {
        if rng.random_range(0.0..1.0) < density {
            let v = rng.random_range(-1.0..1.0);
            tensor.add_at(idx, v);
        }
        return;
    }
    for i in 0..dim {
        idx[pos] = i;
        fill_general(tensor, idx, pos + 1, dim, density, rng);
    }
}

/// Draw one value per sorted index multiset and copy it to every
/// permutation, so the result is exactly symmetric.
fn fill_symmetric(tensor: &mut Tensor, order: usize, dim: usize, density: f64, rng: &mut ChaCha8Rng) {
    use std::collections::HashMap;
    let mut rep_values: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut rep = vec![0usize; order];
    loop {
        // non-decreasing tuples enumerate the multisets once
        if rng.random_range(0.0..1.0) < density {
            rep_values.insert(rep.clone(), rng.random_range(-1.0..1.0));
        }
        // next non-decreasing tuple
        let mut pos = order;
        loop {
            if pos == 0 {
                // enumeration finished: assign all entries
                let total = tensor.entries().len();
                let mut idx = vec![0usize; order];
                for flat in 0..total {
                    let mut rest = flat;
                    for slot in idx.iter_mut().rev() {
                        *slot = rest % dim;
                        rest /= dim;
                    }
                    let mut key = idx.clone();
                    key.sort_unstable();
                    if let Some(&v) = rep_values.get(&key) {
                        tensor.add_at(&idx, v);
                    }
                }
                return;
            }
            pos -= 1;
            if rep[pos] + 1 < dim {
                let v = rep[pos] + 1;
                for slot in rep.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}
