use crate::circuit::{Circuit, CircuitBuilder, Node, NodeId, Op, Semiring};
use crate::error::Result;

/// Circuit producing the minimum-degree slice of the produced polynomial, coefficients
/// included.
///
/// Minimum degrees are computed bottom-up (sum at products, minimum at sums); an
/// addition gate whose operands differ in minimum degree is replaced by its
/// lower-degree operand.
pub fn lower_envelope_circuit(c: &Circuit) -> Result<Circuit> {
    c.require_semiring(Semiring::Arithmetic)?;
    c.require_constant_free()?;
    c.require_monotone()?;
    let mut b = CircuitBuilder::new(Semiring::Arithmetic, c.num_vars());
    let mut mdeg: Vec<u64> = Vec::with_capacity(c.nodes().len());
    let mut map: Vec<NodeId> = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let (d, id) = match node {
            Node::Input(i) | Node::Literal { var: i, .. } => (1, b.input(*i)),
            Node::Const(_) => unreachable!("constant-free"),
            Node::Gate { op: Op::Mul, left, right } => (
                mdeg[*left].saturating_add(mdeg[*right]),
                b.mul(map[*left], map[*right]),
            ),
            Node::Gate { op: Op::Add, left, right } => {
                let (dl, dr) = (mdeg[*left], mdeg[*right]);
                if dl < dr {
                    (dl, map[*left])
                } else if dr < dl {
                    (dr, map[*right])
                } else {
                    (dl, b.add(map[*left], map[*right]))
                }
            }
        };
        mdeg.push(d);
        map.push(id);
    }
    let outputs = c.outputs().iter().map(|&o| map[o]).collect();
    Ok(b.build(outputs)?.compact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::integer;
    use crate::error::Error;
    use crate::poly::{brute_force_expand, Caps};

    #[test]
    fn keeps_lowest_degree_terms() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 2);
        let (x, y) = (b.input(0), b.input(1));
        let xy = b.mul(x, y);
        let o = b.add(x, xy);
        let c = b.build_single(o).unwrap();
        let e = lower_envelope_circuit(&c).unwrap();
        assert_eq!(brute_force_expand(&e, &Caps::default()).unwrap().to_string(), "1 x1\n");
        assert!(e.size() <= c.size());
    }

    #[test]
    fn coefficients_survive() {
        // 2x + 3xy built as (x + x) + (xy + xy + xy)
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 2);
        let (x, y) = (b.input(0), b.input(1));
        let two_x = b.add(x, x);
        let xy = b.mul(x, y);
        let xy2 = b.add(xy, xy);
        let xy3 = b.add(xy2, xy);
        let o = b.add(xy3, two_x);
        let c = b.build_single(o).unwrap();
        let e = lower_envelope_circuit(&c).unwrap();
        assert_eq!(brute_force_expand(&e, &Caps::default()).unwrap().to_string(), "2 x1\n");
    }

    #[test]
    fn homogeneous_is_unchanged() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 2);
        let (x, y) = (b.input(0), b.input(1));
        let s = b.add(x, y);
        let o = b.mul(s, s);
        let c = b.build_single(o).unwrap();
        let e = lower_envelope_circuit(&c).unwrap();
        assert_eq!(
            brute_force_expand(&e, &Caps::default()).unwrap(),
            brute_force_expand(&c, &Caps::default()).unwrap()
        );
    }

    #[test]
    fn rejects_constants() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 1);
        let x = b.input(0);
        let k = b.constant(integer(2));
        let o = b.mul(x, k);
        let c = b.build_single(o).unwrap();
        assert_eq!(lower_envelope_circuit(&c), Err(Error::HasConstants));
    }
}
