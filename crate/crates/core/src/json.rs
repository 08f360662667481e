//! JSON forms. Coefficients are integers in prime fields and coordinate arrays
//! (constant term first) in extension fields.

use serde::{Deserialize, Serialize};

use crate::algebraic::{AlgebraicRelation, Dfao, KernelBasis};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::noncomm::{LinRep, NcSeries, RankEstimate};
use crate::rational::RationalFunction;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Coords(Vec<i64>),
}

pub fn elem_to_json(field: &Field, a: Elem) -> CoeffJson {
    if field.is_prime_field() {
        CoeffJson::Int(i64::from(a.packed()))
    } else {
        CoeffJson::Coords(field.coords(a).into_iter().map(i64::from).collect())
    }
}

pub fn elem_from_json(field: &Field, c: &CoeffJson) -> Result<Elem> {
    let p = i64::from(field.characteristic());
    match c {
        CoeffJson::Int(n) => Ok(field.from_int(*n)),
        CoeffJson::Coords(v) => {
            if v.len() > field.degree() {
                return Err(Error::Parse(format!("{} coordinates for a degree-{} field", v.len(), field.degree())));
            }
            let coords: Vec<u32> = v.iter().map(|&x| x.rem_euclid(p) as u32).collect();
            field.from_coords(&coords)
        }
    }
}

fn elems_to_json(field: &Field, v: &[Elem]) -> Vec<CoeffJson> {
    v.iter().map(|&a| elem_to_json(field, a)).collect()
}

fn elems_from_json(field: &Field, v: &[CoeffJson]) -> Result<Vec<Elem>> {
    v.iter().map(|c| elem_from_json(field, c)).collect()
}

/// The field named in a payload, which must agree with `expected` when given.
fn payload_field(spec: &str, expected: Option<&Field>) -> Result<Field> {
    let f = Field::parse(spec)?;
    if let Some(e) = expected {
        e.check_same(&f)?;
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub field: String,
    pub order: usize,
    pub coeffs: Vec<CoeffJson>,
}

impl SeriesJson {
    pub fn from_series(s: &Series) -> SeriesJson {
        SeriesJson { field: s.field().spec(), order: s.order(), coeffs: elems_to_json(s.field(), s.coeffs()) }
    }

    pub fn to_series(&self, expected: Option<&Field>) -> Result<Series> {
        let f = payload_field(&self.field, expected)?;
        if self.coeffs.len() != self.order {
            return Err(Error::Parse(format!("order {} but {} coefficients", self.order, self.coeffs.len())));
        }
        Series::new(&f, elems_from_json(&f, &self.coeffs)?).map_err(|_| Error::Parse("empty series".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub field: String,
    pub num: Vec<CoeffJson>,
    pub den: Vec<CoeffJson>,
}

impl RationalJson {
    pub fn from_rational(r: &RationalFunction) -> RationalJson {
        RationalJson { field: r.field().spec(), num: elems_to_json(r.field(), r.num()), den: elems_to_json(r.field(), r.den()) }
    }

    pub fn to_rational(&self, expected: Option<&Field>) -> Result<RationalFunction> {
        let f = payload_field(&self.field, expected)?;
        RationalFunction::new(&f, elems_from_json(&f, &self.num)?, elems_from_json(&f, &self.den)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DfaoJson {
    pub p: u32,
    pub field: String,
    pub states: usize,
    pub initial: usize,
    pub delta: Vec<Vec<usize>>,
    pub output: Vec<CoeffJson>,
}

impl DfaoJson {
    pub fn from_dfao(d: &Dfao) -> DfaoJson {
        DfaoJson {
            p: d.base(),
            field: d.field.spec(),
            states: d.states(),
            initial: 0,
            delta: d.delta.clone(),
            output: elems_to_json(&d.field, &d.output),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelJson {
    pub field: String,
    pub dim: usize,
    pub verified_order: usize,
    /// `sections[j][d]`: coordinates of section `d` of basis element `j`.
    pub sections: Vec<Vec<Vec<CoeffJson>>>,
}

impl KernelJson {
    pub fn from_kernel(k: &KernelBasis) -> KernelJson {
        let f = k.field();
        KernelJson {
            field: f.spec(),
            dim: k.dim(),
            verified_order: k.verified_order,
            sections: k.sections.iter().map(|row| row.iter().map(|c| elems_to_json(f, c)).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationJson {
    pub field: String,
    pub deg_x: usize,
    pub deg_y: usize,
    pub verified_order: usize,
    /// `coeffs[j][i]` multiplies `X^i Y^j`.
    pub coeffs: Vec<Vec<CoeffJson>>,
}

impl RelationJson {
    pub fn from_relation(r: &AlgebraicRelation) -> RelationJson {
        RelationJson {
            field: r.field.spec(),
            deg_x: r.deg_x,
            deg_y: r.deg_y,
            verified_order: r.verified_order,
            coeffs: r.coeffs.iter().map(|row| elems_to_json(&r.field, row)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinRepJson {
    pub field: String,
    pub dim: usize,
    pub u: Vec<CoeffJson>,
    pub matrices: Vec<Vec<Vec<CoeffJson>>>,
    pub v: Vec<CoeffJson>,
}

impl LinRepJson {
    pub fn from_linrep(r: &LinRep) -> LinRepJson {
        let f = &r.field;
        LinRepJson {
            field: f.spec(),
            dim: r.dim(),
            u: elems_to_json(f, &r.u),
            matrices: r.matrices.iter().map(|m| m.iter().map(|row| elems_to_json(f, row)).collect()).collect(),
            v: elems_to_json(f, &r.v),
        }
    }

    pub fn to_linrep(&self, expected: Option<&Field>) -> Result<LinRep> {
        let f = payload_field(&self.field, expected)?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.iter().map(|row| elems_from_json(&f, row)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rep = LinRep::new(&f, elems_from_json(&f, &self.u)?, matrices, elems_from_json(&f, &self.v)?)
            .map_err(|e| Error::Parse(e.to_string()))?;
        if rep.dim() != self.dim {
            return Err(Error::Parse(format!("dim {} but vectors of length {}", self.dim, rep.dim())));
        }
        Ok(rep)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NcTermJson {
    /// 1-based letters.
    pub word: Vec<usize>,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NcSeriesJson {
    pub field: String,
    pub letters: usize,
    pub degree: usize,
    pub terms: Vec<NcTermJson>,
}

impl NcSeriesJson {
    pub fn from_nc(s: &NcSeries) -> NcSeriesJson {
        NcSeriesJson {
            field: s.field().spec(),
            letters: s.letters(),
            degree: s.degree(),
            terms: s
                .terms()
                .into_iter()
                .map(|(w, c)| NcTermJson { word: w.iter().map(|x| x + 1).collect(), coeff: elem_to_json(s.field(), c) })
                .collect(),
        }
    }

    pub fn to_nc(&self, expected: Option<&Field>) -> Result<NcSeries> {
        let f = payload_field(&self.field, expected)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let word = t
                    .word
                    .iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Parse("letters are 1-based".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((word, elem_from_json(&f, &t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        NcSeries::from_terms(&f, self.letters, self.degree, &terms).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankJson {
    pub rank: usize,
    pub l: usize,
    pub column_length: usize,
}

impl From<RankEstimate> for RankJson {
    fn from(r: RankEstimate) -> RankJson {
        RankJson { rank: r.rank, l: r.l, column_length: r.column_length }
    }
}

pub fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("JSON: {e}")))
}
