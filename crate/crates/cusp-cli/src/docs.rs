//! Serialized document formats: connections, moduli vectors, and jets.
//! Complex numbers are always stored as `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use cusp_core::{Connection, Jet, LocalFunctional, ModuliPoint, Tolerance};

fn pack(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

fn unpack(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

/// Basis in which functional coefficients are stored. Derivative
/// coefficients are converted on load via `t_j = a_j * j!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Taylor,
    Derivative,
}

/// A span of local functionals cutting out a subalgebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionDocument {
    pub truncation: usize,
    pub basis: BasisKind,
    pub functionals: Vec<Vec<[f64; 2]>>,
}

impl ConnectionDocument {
    pub fn from_connection(gamma: &Connection) -> Self {
        ConnectionDocument {
            truncation: gamma.truncation(),
            basis: BasisKind::Taylor,
            functionals: gamma
                .basis()
                .iter()
                .map(|lam| pack(lam.taylor()))
                .collect(),
        }
    }

    pub fn to_connection(&self, tol: Tolerance) -> Result<Connection, String> {
        if self.functionals.is_empty() {
            return Err("document lists no functionals".into());
        }
        let mut lams = Vec::with_capacity(self.functionals.len());
        for row in &self.functionals {
            if row.len() != self.truncation + 1 {
                return Err(format!(
                    "functional has {} entries, expected {}",
                    row.len(),
                    self.truncation + 1
                ));
            }
            let coeffs = unpack(row);
            lams.push(match self.basis {
                BasisKind::Taylor => LocalFunctional::new(coeffs),
                BasisKind::Derivative => LocalFunctional::from_derivative_coeffs(&coeffs),
            });
        }
        Connection::new(&lams, tol).map_err(|e| e.to_string())
    }
}

/// Moduli parameters of a simple cusp algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliDocument {
    pub n: usize,
    pub alphas: Vec<[f64; 2]>,
}

impl ModuliDocument {
    pub fn from_point(m: &ModuliPoint) -> Self {
        ModuliDocument {
            n: m.n(),
            alphas: pack(m.alphas()),
        }
    }

    pub fn to_point(&self) -> Result<ModuliPoint, String> {
        if self.alphas.len() != self.n {
            return Err(format!(
                "document declares n={} but lists {} parameters",
                self.n,
                self.alphas.len()
            ));
        }
        Ok(ModuliPoint::new(unpack(&self.alphas)))
    }
}

/// Truncated Taylor coefficients of a single function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetDocument {
    pub coefficients: Vec<[f64; 2]>,
}

impl JetDocument {
    pub fn from_jet(f: &Jet) -> Self {
        JetDocument {
            coefficients: pack(f.coeffs()),
        }
    }

    pub fn to_jet(&self) -> Result<Jet, String> {
        if self.coefficients.is_empty() {
            return Err("jet document lists no coefficients".into());
        }
        Ok(Jet::new(unpack(&self.coefficients)))
    }
}

/// Output of the canonical-form command: moduli parameters together
/// with their orbit representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalDocument {
    pub n: usize,
    pub alphas: Vec<[f64; 2]>,
    pub coordinates: Vec<[f64; 2]>,
}

impl CanonicalDocument {
    pub fn new(form: &ModuliPoint, representative: &ModuliPoint) -> Self {
        CanonicalDocument {
            n: form.n(),
            alphas: pack(form.alphas()),
            coordinates: pack(representative.alphas()),
        }
    }
}

/// Output of the decompose command: polynomial coefficients in the
/// primitive and the high-order remainder jet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub polynomial: Vec<[f64; 2]>,
    pub remainder: Vec<[f64; 2]>,
}

impl DecompositionDocument {
    pub fn new(polynomial: &[Complex64], remainder: &Jet) -> Self {
        DecompositionDocument {
            polynomial: pack(polynomial),
            remainder: pack(remainder.coeffs()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connection_documents_roundtrip() {
        let doc = ConnectionDocument {
            truncation: 5,
            basis: BasisKind::Taylor,
            functionals: vec![vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]],
        };
        let gamma = doc.to_connection(Tolerance::default()).unwrap();
        let back = ConnectionDocument::from_connection(&gamma);
        assert_eq!(doc, back);
        let json = serde_json::to_string(&back).unwrap();
        let reparsed: ConnectionDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, reparsed);
    }

    #[test]
    fn derivative_documents_convert_on_load() {
        let doc = ConnectionDocument {
            truncation: 2,
            basis: BasisKind::Derivative,
            functionals: vec![vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]]],
        };
        let gamma = doc.to_connection(Tolerance::default()).unwrap();
        let lam = &gamma.basis()[0];
        // t = (0, 1!, 2!), pivot-normalized by the connection
        assert_eq!(lam.taylor()[1], Complex64::new(0.5, 0.0));
        assert_eq!(lam.taylor()[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn bad_documents_are_rejected() {
        let doc = ConnectionDocument {
            truncation: 4,
            basis: BasisKind::Taylor,
            functionals: vec![vec![[1.0, 0.0]; 3]],
        };
        assert!(doc.to_connection(Tolerance::default()).is_err());
        let m = ModuliDocument {
            n: 2,
            alphas: vec![[0.5, 0.0]],
        };
        assert!(m.to_point().is_err());
        let j = JetDocument { coefficients: vec![] };
        assert!(j.to_jet().is_err());
    }

    #[test]
    fn moduli_documents_roundtrip() {
        let point = ModuliPoint::new(vec![Complex64::new(0.25, -0.5)]);
        let doc = ModuliDocument::from_point(&point);
        assert_eq!(doc.n, 1);
        let back = doc.to_point().unwrap();
        assert_eq!(back.alphas(), point.alphas());
    }
}
