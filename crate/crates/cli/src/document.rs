//! JSON certificate documents. Every integer is a decimal string.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use quadring::builder::{Provenance, PAIR_LABELS};
use quadring::oracle::{verify_quadruple, VerifyFailure};
use quadring::{QuadrupleCertificate, RingContext, RingElement};

pub const SCHEMA_VERSION: &str = "1";

/// Provenance of a scaled certificate's inner construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerProvenance {
    pub provenance: String,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<InnerProvenance>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub d: String,
    pub n: RingElement,
    pub elements: [RingElement; 4],
    /// Keyed by pair label, `"12"` through `"34"`.
    pub witnesses: BTreeMap<String, RingElement>,
    pub provenance: String,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<InnerProvenance>>,
    #[serde(default)]
    pub verified: bool,
}

#[derive(Debug)]
pub enum DocumentError {
    Json(serde_json::Error),
    Field(String),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Json(e) => write!(f, "malformed document: {e}"),
            DocumentError::Field(s) => write!(f, "malformed document: {s}"),
        }
    }
}

impl std::error::Error for DocumentError {}

fn params_to_strings(params: &BTreeMap<String, BigInt>) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn params_from_strings(
    params: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, BigInt>, DocumentError> {
    params
        .iter()
        .map(|(k, v)| {
            v.parse::<BigInt>()
                .map(|b| (k.clone(), b))
                .map_err(|e| DocumentError::Field(format!("param {k} = {v:?}: {e}")))
        })
        .collect()
}

fn inner_to_doc(p: &Provenance) -> InnerProvenance {
    InnerProvenance {
        provenance: p.tag.clone(),
        params: params_to_strings(&p.params),
        inner: p.inner.as_deref().map(|i| Box::new(inner_to_doc(i))),
    }
}

fn inner_from_doc(doc: &InnerProvenance) -> Result<Provenance, DocumentError> {
    Ok(Provenance {
        tag: doc.provenance.clone(),
        params: params_from_strings(&doc.params)?,
        inner: match &doc.inner {
            Some(i) => Some(Box::new(inner_from_doc(i)?)),
            None => None,
        },
    })
}

impl CertificateDocument {
    pub fn from_certificate(cert: &QuadrupleCertificate, verified: bool) -> Self {
        let witnesses = PAIR_LABELS
            .iter()
            .zip(&cert.witnesses)
            .map(|(l, w)| (l.to_string(), w.clone()))
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            d: cert.d.to_string(),
            n: cert.n.clone(),
            elements: cert.elements.clone(),
            witnesses,
            provenance: cert.provenance.tag.clone(),
            params: params_to_strings(&cert.provenance.params),
            inner: cert.provenance.inner.as_deref().map(|i| Box::new(inner_to_doc(i))),
            verified,
        }
    }

    pub fn to_certificate(&self) -> Result<QuadrupleCertificate, DocumentError> {
        let d = self.d_value()?;
        let witnesses: Vec<RingElement> = PAIR_LABELS
            .iter()
            .map(|l| {
                self.witnesses
                    .get(*l)
                    .cloned()
                    .ok_or_else(|| DocumentError::Field(format!("missing witness {l}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(QuadrupleCertificate {
            d,
            n: self.n.clone(),
            elements: self.elements.clone(),
            witnesses: witnesses.try_into().expect("six labels"),
            provenance: Provenance {
                tag: self.provenance.clone(),
                params: params_from_strings(&self.params)?,
                inner: match &self.inner {
                    Some(i) => Some(Box::new(inner_from_doc(i)?)),
                    None => None,
                },
            },
        })
    }

    pub fn d_value(&self) -> Result<u64, DocumentError> {
        self.d
            .parse()
            .map_err(|e| DocumentError::Field(format!("d = {:?}: {e}", self.d)))
    }

    pub fn context(&self) -> Result<RingContext, DocumentError> {
        RingContext::new(self.d_value()?).map_err(|e| DocumentError::Field(e.to_string()))
    }

    /// Re-runs the oracle on the elements; the stored witnesses are not trusted.
    pub fn reverify(&self) -> Result<Result<QuadrupleCertificate, VerifyFailure>, DocumentError> {
        let ctx = self.context()?;
        Ok(verify_quadruple(&self.elements, &self.n, &ctx))
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text).map_err(DocumentError::Json)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Field(format!(
                "unsupported schema_version {:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
