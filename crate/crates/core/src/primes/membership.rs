use super::{ceil_pow, RationalExponent};
use crate::error::{Error, Result};

/// Whether `pr = floor(n^c)` for some integer `n`.
///
/// `pr = floor(n^c)` exactly when `pr^gamma <= n < (pr+1)^gamma`, so the
/// question is whether `ceil((pr+1)^gamma) > ceil(pr^gamma)`.
pub fn membership(pr: u64, c: RationalExponent) -> Result<bool> {
    if pr < 2 {
        return Err(Error::InvalidArgument(format!("membership needs pr >= 2, got {pr}")));
    }
    let next = pr
        .checked_add(1)
        .ok_or_else(|| Error::InvalidArgument("pr too large".into()))?;
    Ok(ceil_pow(next, c.q(), c.p()) > ceil_pow(pr, c.q(), c.p()))
}
