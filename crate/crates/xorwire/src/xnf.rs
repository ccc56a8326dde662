//! XOR-clause (XNF) export, for interchange with external XOR-SAT solvers.
//!
//! One clause per vertex: clause i is the XOR of the variables in row i
//! and is satisfied exactly when bulb i is lit. A lit bulb needs the row
//! parity to be `1 XOR c_i`, so the first literal is negated when `c_i = 1`.

use crate::bits::BitVector;
use crate::error::Gf2Error;
use crate::wiring::WiringMatrix;

/// Renders `p cnf n n` followed by one `x`-prefixed, `0`-terminated XOR
/// clause per row, variables ascending and 1-based.
pub fn write_xnf(w: &WiringMatrix, c: &BitVector) -> Result<String, Gf2Error> {
    let n = w.n();
    if c.len() != n {
        return Err(Gf2Error::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let mut out = format!("p cnf {n} {n}\n");
    for i in 0..n {
        out.push('x');
        let mut first = true;
        for j in 0..n {
            if w.get(i, j) {
                if first && c.get(i) {
                    out.push_str(&format!(" -{}", j + 1));
                } else {
                    out.push_str(&format!(" {}", j + 1));
                }
                first = false;
            }
        }
        out.push_str(" 0\n");
    }
    Ok(out)
}
