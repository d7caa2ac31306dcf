//! Scenarios: a defining function, a J-paired frame, and the structure it induces.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{j_from_frame, AlmostComplexStructure, Frame, Hypersurface, VectorField};
use crate::series::scalar::rat;
use crate::series::{CScalar, MultiSeries, Rational};

pub const BUILTIN_NAMES: [&str; 5] = [
    "counterexample-r6",
    "ex1-r8",
    "ex2-r8",
    "levi-flat-r4",
    "siegel-r6",
];

/// Working accuracy of the built-in scenarios. All of their data is polynomial
/// of degree ≤ 4, so this is a choice of truncation, not an approximation.
pub const BUILTIN_ACCURACY: u32 = 10;

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub phi: MultiSeries,
    pub frame: Frame,
}

/// Loaded scenario with the derived structure and hypersurface.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub scenario: Scenario,
    pub j: AlmostComplexStructure,
    pub hyp: Hypersurface,
}

impl Scenario {
    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn accuracy(&self) -> u32 {
        self.frame.accuracy().min(self.phi.accuracy())
    }

    pub fn truncate(&self, accuracy: u32) -> Scenario {
        let fields = self
            .frame
            .fields()
            .iter()
            .map(|f| f.truncate(accuracy))
            .collect();
        Scenario {
            name: self.name.clone(),
            phi: self.phi.truncate(accuracy),
            frame: Frame::new(fields, self.frame.names().to_vec())
                .expect("truncation keeps the frame at 0"),
        }
    }

    pub fn geometry(&self) -> Result<Geometry> {
        Ok(Geometry {
            scenario: self.clone(),
            j: j_from_frame(&self.frame)?,
            hyp: Hypersurface::new(self.phi.clone())?,
        })
    }

    pub fn field(&self, name: &str) -> Result<&VectorField> {
        self.frame
            .by_name(name)
            .ok_or_else(|| Error::Input(format!("no field named {name} in scenario {}", self.name)))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("nvars".into(), json!(self.dim()));
        m.insert("accuracy".into(), json!(self.accuracy()));
        m.insert("phi".into(), self.phi.to_json());
        m.insert(
            "frame".into(),
            Value::Array(self.frame.fields().iter().map(|f| f.to_json()).collect()),
        );
        m.insert("pairing".into(), json!("standard"));
        Value::Object(m)
    }

    pub fn canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(name: &str, v: &Value) -> Result<Scenario> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("scenario must be a JSON object".into()))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| Error::Input(format!("scenario is missing \"{k}\"")))
        };
        let nvars = get("nvars")?
            .as_u64()
            .ok_or_else(|| Error::Input("\"nvars\" must be a non-negative integer".into()))?
            as usize;
        let accuracy = get("accuracy")?
            .as_u64()
            .ok_or_else(|| Error::Input("\"accuracy\" must be a non-negative integer".into()))?
            as u32;
        if let Some(p) = obj.get("pairing") {
            if p != "standard" {
                return Err(Error::Input(format!("unsupported pairing {p}")));
            }
        }
        let phi = MultiSeries::from_json(get("phi")?)?;
        let fields = get("frame")?
            .as_array()
            .ok_or_else(|| Error::Input("\"frame\" must be an array of fields".into()))?
            .iter()
            .map(VectorField::from_json)
            .collect::<Result<Vec<_>>>()?;
        if phi.nvars() != nvars || fields.len() != nvars {
            return Err(Error::Input(format!(
                "scenario declares {nvars} variables but has {} frame fields and φ in {} variables",
                fields.len(),
                phi.nvars()
            )));
        }
        let fields = fields.into_iter().map(|f| f.truncate(accuracy)).collect();
        Ok(Scenario {
            name: name.to_string(),
            phi: phi.truncate(accuracy),
            frame: Frame::with_default_names(fields)?,
        })
    }

    pub fn parse(name: &str, text: &str) -> Result<Scenario> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("scenario JSON: {e}")))?;
        Scenario::from_json(name, &v)
    }

    /// A built-in name, or a path to a scenario JSON file.
    pub fn load(spec: &str) -> Result<Scenario> {
        if let Some(s) = builtin(spec) {
            return Ok(s);
        }
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::Input(format!("cannot read scenario {spec}: {e}")))?;
        Scenario::parse(spec, &text)
    }
}

/// Polynomial builder over a fixed number of variables.
struct Poly {
    dim: usize,
    acc: u32,
}

impl Poly {
    fn var(&self, i: usize) -> MultiSeries {
        MultiSeries::var(self.dim, self.acc, i)
    }

    fn c(&self, r: Rational) -> MultiSeries {
        MultiSeries::constant(self.dim, self.acc, CScalar::real(r))
    }

    fn zero(&self) -> MultiSeries {
        MultiSeries::zero(self.dim, self.acc)
    }

    /// Field with the given (coordinate index, coefficient) entries.
    fn field(&self, entries: Vec<(usize, MultiSeries)>) -> VectorField {
        let mut comps = vec![self.zero(); self.dim];
        for (i, c) in entries {
            comps[i] = &comps[i] + &c;
        }
        VectorField::new(comps)
    }
}

const X1: usize = 0;
const Y1: usize = 1;
const X2: usize = 2;
const Y2: usize = 3;
const X3: usize = 4;
const Y3: usize = 5;
const X4: usize = 6;
const Y4: usize = 7;

/// L₁..L₆ of the six-dimensional counterexample, embedded in `dim` variables.
fn counterexample_fields(p: &Poly) -> Vec<VectorField> {
    let v = |i| p.var(i);
    let one = p.c(rat(1, 1));
    let l1 = p.field(vec![(X1, one.clone())]);
    let l2 = p.field(vec![(Y1, one.clone())]);
    let l3 = p.field(vec![
        (X2, one.clone()),
        (X1, p.c(rat(-1, 2)) * v(Y3) * v(Y3)),
    ]);
    let l4 = p.field(vec![
        (Y2, one.clone()),
        (X1, p.c(rat(-2, 1)) * v(Y3) * v(X3) + v(X2)),
    ]);
    let l5 = p.field(vec![(X3, one.clone()), (X1, -(v(Y2) * v(Y3)))]);
    let l6 = p.field(vec![
        (Y3, one.clone()),
        (X2, v(X3)),
        (
            X1,
            -(p.c(rat(1, 2)) * v(X3) * v(Y3) * v(Y3) + v(X3) * v(Y2)),
        ),
    ]);
    vec![l1, l2, l3, l4, l5, l6]
}

fn build(name: &str, phi: MultiSeries, fields: Vec<VectorField>) -> Scenario {
    Scenario {
        name: name.to_string(),
        phi,
        frame: Frame::with_default_names(fields).expect("built-in frames are nondegenerate"),
    }
}

pub fn counterexample_r6() -> Scenario {
    let p = Poly {
        dim: 6,
        acc: BUILTIN_ACCURACY,
    };
    build("counterexample-r6", p.var(Y1), counterexample_fields(&p))
}

pub fn ex1_r8() -> Scenario {
    let p = Poly {
        dim: 8,
        acc: BUILTIN_ACCURACY,
    };
    let one = p.c(rat(1, 1));
    let mut fields = counterexample_fields(&p);
    fields.push(p.field(vec![(X4, one.clone()), (Y4, p.var(Y4))]));
    fields.push(p.field(vec![(Y4, one)]));
    build("ex1-r8", p.var(Y1), fields)
}

pub fn ex2_r8() -> Scenario {
    let p = Poly {
        dim: 8,
        acc: BUILTIN_ACCURACY,
    };
    let one = p.c(rat(1, 1));
    let mut fields = counterexample_fields(&p);
    let y1y4 = p.var(Y1) * p.var(Y4);
    let l7 = p
        .field(vec![(X4, one.clone()), (Y4, p.var(Y4))])
        .add(&fields[4].scale(&y1y4));
    let l8 = p.field(vec![(Y4, one)]).add(&fields[5].scale(&y1y4));
    fields.push(l7);
    fields.push(l8);
    build("ex2-r8", p.var(Y1), fields)
}

/// φ = y₁ with the coordinate frame on ℝ⁴: Levi-flat, J = J₀.
pub fn levi_flat_r4() -> Scenario {
    let p = Poly {
        dim: 4,
        acc: BUILTIN_ACCURACY,
    };
    build(
        "levi-flat-r4",
        p.var(Y1),
        Frame::standard(4, BUILTIN_ACCURACY).fields().to_vec(),
    )
}

/// φ = y₁ − x₂² − y₂² on ℝ⁶ with J = J₀: Levi form of rank one, kernel spanned
/// by ∂x₃, ∂y₃. The frame is adapted so that L₃..L₆ span T^J M.
pub fn siegel_r6() -> Scenario {
    let p = Poly {
        dim: 6,
        acc: BUILTIN_ACCURACY,
    };
    let v = |i| p.var(i);
    let one = p.c(rat(1, 1));
    let two = p.c(rat(2, 1));
    let phi = v(Y1) - v(X2) * v(X2) - v(Y2) * v(Y2);
    let fields = vec![
        p.field(vec![(X1, one.clone())]),
        p.field(vec![(Y1, one.clone())]),
        p.field(vec![
            (X2, one.clone()),
            (X1, two.clone() * v(Y2)),
            (Y1, two.clone() * v(X2)),
        ]),
        p.field(vec![
            (Y2, one.clone()),
            (Y1, two.clone() * v(Y2)),
            (X1, -(two * v(X2))),
        ]),
        p.field(vec![(X3, one.clone())]),
        p.field(vec![(Y3, one)]),
    ];
    build("siegel-r6", phi, fields)
}

pub fn builtin(name: &str) -> Option<Scenario> {
    match name {
        "counterexample-r6" => Some(counterexample_r6()),
        "ex1-r8" => Some(ex1_r8()),
        "ex2-r8" => Some(ex2_r8()),
        "levi-flat-r4" => Some(levi_flat_r4()),
        "siegel-r6" => Some(siegel_r6()),
        _ => None,
    }
}

/// Checked-in canonical serialization of a built-in scenario.
pub fn canonical_text(name: &str) -> Option<&'static str> {
    match name {
        "counterexample-r6" => Some(include_str!("../scenarios/counterexample-r6.json")),
        "ex1-r8" => Some(include_str!("../scenarios/ex1-r8.json")),
        "ex2-r8" => Some(include_str!("../scenarios/ex2-r8.json")),
        "levi-flat-r4" => Some(include_str!("../scenarios/levi-flat-r4.json")),
        "siegel-r6" => Some(include_str!("../scenarios/siegel-r6.json")),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_match_checked_in_files() {
        let bless = std::env::var_os("JDISC_BLESS").is_some();
        for name in BUILTIN_NAMES {
            let s = builtin(name).unwrap();
            if bless {
                let path = format!("{}/scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"));
                std::fs::write(path, s.canonical_string()).unwrap();
                continue;
            }
            assert_eq!(
                s.canonical_string(),
                canonical_text(name).unwrap(),
                "{name}"
            );
            let back = Scenario::parse(name, canonical_text(name).unwrap()).unwrap();
            assert_eq!(back.frame.fields(), s.frame.fields());
            assert_eq!(back.phi, s.phi);
        }
    }

    #[test]
    fn counterexample_structure_is_standard_at_origin() {
        let g = counterexample_r6().truncate(5).geometry().unwrap();
        assert!(g.j.is_standard_at_origin());
        assert!(g.j.squares_to_minus_identity());
        let f = &g.scenario.frame;
        assert_eq!(g.j.apply(f.field(4)), *f.field(5));
        assert_eq!(g.j.apply(f.field(5)), f.field(4).neg());
    }
}
