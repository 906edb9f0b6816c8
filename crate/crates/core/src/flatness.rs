//! Degree `(1,1,1)` part of the coordinate ring of `X(1,3)`.
//!
//! `X(1,3)` sits in `(P²)³` with coordinates `(x_i : y_i : z_i)` on the
//! `i`-th factor. Each of its three irreducible components has an open cell
//! parametrized by `(a_j, b_j)`; column `i` of the cell matrix gives the
//! point of the `i`-th factor. A multidegree `(1,1,1)` monomial restricts to
//! a triple of polynomials, one per cell, and the span of those triples is
//! the graded piece.

use num_rational::BigRational;

use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;

/// Parameter names, in variable order.
pub const PARAMETERS: [&str; 6] = ["a1", "b1", "a2", "b2", "a3", "b3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    X,
    Y,
    Z,
}

impl Coord {
    const ALL: [Coord; 3] = [Coord::X, Coord::Y, Coord::Z];

    fn row(self) -> usize {
        self as usize
    }

    fn letter(self) -> char {
        ['x', 'y', 'z'][self as usize]
    }
}

/// `u_1 u_2 u_3` with `u_i ∈ {x_i, y_i, z_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriDegMonomial(pub [Coord; 3]);

impl TriDegMonomial {
    /// All 27, in lexicographic order `x1x2x3, x1x2y3, …, z1z2z3`.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(27);
        for a in Coord::ALL {
            for b in Coord::ALL {
                for c in Coord::ALL {
                    out.push(Self([a, b, c]));
                }
            }
        }
        out
    }

    /// Parses `"y1y2z3"`.
    pub fn parse(s: &str) -> Option<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 6 {
            return None;
        }
        let mut out = [Coord::X; 3];
        for i in 0..3 {
            if chars[2 * i + 1] != char::from(b'1' + i as u8) {
                return None;
            }
            out[i] = match chars[2 * i] {
                'x' => Coord::X,
                'y' => Coord::Y,
                'z' => Coord::Z,
                _ => return None,
            };
        }
        Some(Self(out))
    }
}

impl std::fmt::Display for TriDegMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            write!(f, "{}{}", c.letter(), i + 1)?;
        }
        Ok(())
    }
}

/// A 3×3 matrix of polynomials in the six parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellParam(pub [[Polynomial; 3]; 3]);

fn param(name: &str) -> Polynomial {
    let idx = PARAMETERS.iter().position(|&p| p == name).expect("known parameter");
    Polynomial::var(PARAMETERS.len(), idx)
}

/// The three cells:
///
/// ```text
/// [ 1  0  0 ]   [ 0  1  0 ]   [ 0  0  1 ]
/// [ a1 1  0 ]   [ 0  a2 1 ]   [ 1  0  a3]
/// [ b1 a1 1 ]   [ 1  b2 a2]   [ a3 1  b3]
/// ```
pub fn cells() -> [CellParam; 3] {
    let nv = PARAMETERS.len();
    let o = || Polynomial::zero(nv);
    let l = || Polynomial::one(nv);
    let (a1, b1, a2, b2, a3, b3) = (param("a1"), param("b1"), param("a2"), param("b2"), param("a3"), param("b3"));
    [
        CellParam([[l(), o(), o()], [a1.clone(), l(), o()], [b1, a1, l()]]),
        CellParam([[o(), l(), o()], [o(), a2.clone(), l()], [l(), b2, a2]]),
        CellParam([[o(), o(), l()], [l(), o(), a3.clone()], [a3, l(), b3]]),
    ]
}

/// Values of `m` on the three cells.
pub fn eval_monomial(m: &TriDegMonomial) -> [Polynomial; 3] {
    let cells = cells();
    std::array::from_fn(|j| {
        m.0.iter().enumerate().fold(Polynomial::one(PARAMETERS.len()), |acc, (i, c)| &acc * &cells[j].0[c.row()][i])
    })
}

/// The ten monomials whose values span the graded piece.
pub fn basis_monomials() -> Vec<TriDegMonomial> {
    ["y1y2z3", "y1z2y3", "y1z2z3", "z1y2y3", "z1y2z3", "z1z2y3", "z1z2z3", "x1y2z3", "z1x2y3", "y1z2x3"]
        .iter()
        .map(|s| TriDegMonomial::parse(s).expect("well-formed"))
        .collect()
}

/// Coefficient rows of the given value triples over all `(cell, monomial)`
/// pairs that occur.
pub fn coefficient_matrix(values: &[[Polynomial; 3]]) -> RationalMatrix {
    let mut columns: Vec<(usize, Vec<u32>)> = Vec::new();
    for triple in values {
        for (cell, p) in triple.iter().enumerate() {
            for (m, _) in p.terms() {
                let key = (cell, m.0.clone());
                if !columns.contains(&key) {
                    columns.push(key);
                }
            }
        }
    }
    columns.sort();
    let rows = values
        .iter()
        .map(|triple| {
            columns
                .iter()
                .map(|(cell, e)| {
                    triple[*cell].terms().find(|(m, _)| m.0 == *e).map(|(_, c)| c.clone()).unwrap_or_default()
                })
                .collect()
        })
        .collect::<Vec<Vec<BigRational>>>();
    if rows.iter().all(Vec::is_empty) {
        return RationalMatrix::zeros(values.len(), 0);
    }
    RationalMatrix::from_rows(rows).expect("rectangular")
}

/// Dimension of the span of all 27 value triples.
pub fn degree111_rank() -> usize {
    let values: Vec<_> = TriDegMonomial::all().iter().map(eval_monomial).collect();
    coefficient_matrix(&values).rank()
}

pub fn format_triple(t: &[Polynomial; 3]) -> [String; 3] {
    std::array::from_fn(|j| t[j].format_with(&PARAMETERS))
}

/// `monomial,cell1,cell2,cell3` with a header row.
pub fn evaluation_csv() -> String {
    let mut out = String::from("monomial,cell1,cell2,cell3\n");
    for m in TriDegMonomial::all() {
        let [c1, c2, c3] = format_triple(&eval_monomial(&m));
        out.push_str(&format!("{m},{c1},{c2},{c3}\n"));
    }
    out
}

/// Whether a triple is identically zero.
pub fn is_zero_triple(t: &[Polynomial; 3]) -> bool {
    t.iter().all(Polynomial::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> TriDegMonomial {
        TriDegMonomial::parse(s).unwrap()
    }

    fn show(s: &str) -> [String; 3] {
        format_triple(&eval_monomial(&mono(s)))
    }

    #[test]
    fn parsing() {
        assert_eq!(TriDegMonomial::all().len(), 27);
        for m in TriDegMonomial::all() {
            assert_eq!(TriDegMonomial::parse(&m.to_string()), Some(m));
        }
        assert_eq!(TriDegMonomial::parse("y1y3z3"), None);
        assert_eq!(TriDegMonomial::parse("w1y2z3"), None);
    }

    #[test]
    fn sample_values() {
        assert_eq!(show("y1y2z3"), ["a1", "0", "0"]);
        assert_eq!(show("x1x2z3"), ["0", "0", "0"]);
        assert_eq!(show("z1z2z3"), ["a1*b1", "a2*b2", "a3*b3"]);
        assert_eq!(show("x1z2z3"), show("y1y2z3"));
    }

    #[test]
    fn rank_ten() {
        assert_eq!(degree111_rank(), 10);
        let basis: Vec<_> = basis_monomials().iter().map(eval_monomial).collect();
        assert_eq!(coefficient_matrix(&basis).rank(), 10);
    }

    #[test]
    fn every_value_is_zero_or_basic() {
        let basis: Vec<_> = basis_monomials().iter().map(eval_monomial).collect();
        for m in TriDegMonomial::all() {
            let v = eval_monomial(&m);
            assert!(is_zero_triple(&v) || basis.contains(&v), "{m}");
        }
    }

    #[test]
    fn csv_shape() {
        let csv = evaluation_csv();
        assert_eq!(csv.lines().count(), 28);
        assert!(csv.contains("\ny1y2z3,a1,0,0\n"));
    }
}
