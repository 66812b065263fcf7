//! JSON documents describing a complex. See `docs/json-format.md`.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use schur_core::homology::homology_all;
use schur_core::schur_functor::build_schur_functor_complex;
use schur_core::{
    build_bh_complex, build_borel_resolution, build_weyl_resolution, BasisLabel, ChainComplex, Composition,
    IntMatrix, WeightMatrix,
};

use crate::ComplexVariant;

pub fn build(lambda: &Composition, variant: ComplexVariant) -> schur_core::Result<ChainComplex> {
    match variant {
        ComplexVariant::Borel => build_borel_resolution(lambda),
        ComplexVariant::Weyl => build_weyl_resolution(lambda),
        ComplexVariant::Bh => build_bh_complex(lambda),
        ComplexVariant::SchurFunctor => build_schur_functor_complex(lambda),
    }
}

pub fn variant_name(variant: ComplexVariant) -> &'static str {
    match variant {
        ComplexVariant::Borel => "borel",
        ComplexVariant::Weyl => "weyl",
        ComplexVariant::Bh => "bh",
        ComplexVariant::SchurFunctor => "schur-functor",
    }
}

#[derive(Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub n: usize,
    pub r: u32,
    pub lambda: Vec<u32>,
    pub variant: &'static str,
    pub modulus: Option<u64>,
}

#[derive(Serialize)]
pub struct Basis {
    pub degree: i64,
    pub labels: Vec<Value>,
}

#[derive(Serialize)]
pub struct Map {
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[Value; 3]>,
}

#[derive(Serialize)]
pub struct Homology {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<Value>,
}

#[derive(Serialize)]
pub struct Document {
    pub metadata: Metadata,
    pub degrees: Vec<i64>,
    pub ranks: Vec<usize>,
    pub bases: Vec<Basis>,
    pub differentials: Vec<Map>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homotopies: Option<Vec<Map>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<Homology>>,
}

/// Integers that fit in 64 bits become numbers, others decimal strings.
pub fn integer(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

fn matrix_rows(m: &WeightMatrix) -> Value {
    Value::from(m.rows())
}

fn label(l: &BasisLabel) -> Value {
    match l {
        BasisLabel::Generator => Value::from("generator"),
        BasisLabel::Matrices(ms) => Value::from(ms.iter().map(matrix_rows).collect::<Vec<_>>()),
        BasisLabel::Tableaux(ts) => Value::from(
            ts.iter().map(|t| Value::from(t.rows().to_vec())).collect::<Vec<_>>(),
        ),
    }
}

fn map(degree: i64, m: &IntMatrix) -> Map {
    Map {
        degree,
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .triplets()
            .into_iter()
            .map(|(i, j, v)| [Value::from(i), Value::from(j), integer(&v)])
            .collect(),
    }
}

pub fn document(
    lambda: &Composition,
    variant: ComplexVariant,
    x: &ChainComplex,
    with_homology: bool,
) -> anyhow::Result<Document> {
    let degrees: Vec<i64> = x.degrees().collect();
    let homotopies = x
        .has_homotopies()
        .then(|| degrees.iter().map(|&k| map(k, &x.homotopy(k).expect("present"))).collect());
    let homology = if with_homology {
        Some(
            homology_all(x)?
                .into_iter()
                .map(|(degree, h)| Homology {
                    degree,
                    free_rank: h.free_rank,
                    torsion: h.torsion.iter().map(|q| integer(&BigInt::from(q.clone()))).collect(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(Document {
        metadata: Metadata {
            tool: "schur",
            version: env!("CARGO_PKG_VERSION"),
            n: lambda.n(),
            r: lambda.r(),
            lambda: lambda.parts().to_vec(),
            variant: variant_name(variant),
            modulus: x.modulus(),
        },
        ranks: x.ranks(),
        bases: degrees.iter().map(|&k| Basis { degree: k, labels: x.basis(k).iter().map(label).collect() }).collect(),
        differentials: degrees.iter().skip(1).map(|&k| map(k, &x.differential(k))).collect(),
        degrees,
        homotopies,
        homology,
    })
}
