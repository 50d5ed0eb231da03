use num_bigint::BigInt;
use num_integer::Integer;

use super::examples::{construct_d10, exceptional_family};
use super::recipe::default_budget;
use super::reduce::reduce_by_d;
use super::search::{lemma21_search, SearchBounds};
use super::support::{classify_support, SupportTag};
use super::thm12::construct_thm12;
use super::thm13::construct_thm13;
use super::{known_certificate, scale, QuadrupleCertificate};
use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Copy, Debug)]
pub struct AutoOptions {
    pub budget: usize,
    pub bounds: SearchBounds,
}

impl Default for AutoOptions {
    fn default() -> Self {
        Self {
            budget: default_budget(),
            bounds: SearchBounds::default(),
        }
    }
}

/// Routes `n` through, in order: the theorem dispatchers, the known
/// certificates, the d = 10 examples, reduction by `d`, and the search.
pub fn construct_auto(
    n: &RingElement,
    ctx: &RingContext,
    opts: AutoOptions,
) -> Result<QuadrupleCertificate> {
    let status = classify_support(n, ctx)?;
    match status.tag {
        SupportTag::ExcludedS => {
            return Err(Error::Excluded {
                n: n.to_string(),
                status,
            })
        }
        SupportTag::ConstructibleHere => {
            let built = if n.x.is_multiple_of(&BigInt::from(4)) {
                construct_thm12(n, ctx, opts.budget)
            } else {
                construct_thm13(n, ctx, opts.budget)
            };
            if let Ok(cert) = built {
                return Ok(cert);
            }
        }
        SupportTag::DelegatedPriorWork | SupportTag::Unknown => {
            if let Some(cert) = known_certificate(ctx, n) {
                return Ok(cert);
            }
        }
        SupportTag::ExcludedResidue | SupportTag::OpenS0 => {
            if let Some(cert) = by_example(n, ctx) {
                return Ok(cert);
            }
            if let Some(red) = reduce_by_d(n, ctx) {
                if red.status.tag != SupportTag::ExcludedS {
                    if let Ok(inner) = construct_auto(&red.n_prime, ctx, opts) {
                        return scale(ctx, &red.w, &inner);
                    }
                }
            }
            return lemma21_search(n, ctx, opts.bounds).ok_or(Error::Excluded {
                n: n.to_string(),
                status,
            });
        }
    }
    lemma21_search(n, ctx, opts.bounds).ok_or_else(|| Error::NotFound { n: n.to_string() })
}

fn by_example(n: &RingElement, ctx: &RingContext) -> Option<QuadrupleCertificate> {
    if ctx.d() != 10 {
        return None;
    }
    exceptional_family(n)?;
    [1u32, 0, 3, 2].into_iter().find_map(|t| construct_d10(ctx, n, t).ok())
}
