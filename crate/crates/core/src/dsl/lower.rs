use crate::circuit::Circuit;
use crate::error::{invalid, Result};
use crate::gaussian::{CircuitElement, QuadratureTerm};
use crate::scalar::Real;

use super::ast::{CircuitAst, ElementKind, ReadoutAst, Sign};

/// Builds the circuit. Homodynes consumed by a `combine` are folded into it
/// and not reported on their own.
pub fn to_circuit<T: Real>(ast: &CircuitAst<T>) -> Result<Circuit<T>> {
    let mut c = Circuit::new(ast.modes.iter().map(|m| m.name.clone()))?;
    for e in &ast.elements {
        let idx = |name: &str| c.mode_index(name);
        let el = match &e.kind {
            ElementKind::Opa { signal, idler, g } => {
                CircuitElement::opa(*g, idx(&signal.name)?, idx(&idler.name)?)?
            }
            ElementKind::Bs { a, b, t } => CircuitElement::beam_splitter(*t, idx(&a.name)?, idx(&b.name)?)?,
            ElementKind::Phase { mode, phi } => CircuitElement::phase(phi.value(), idx(&mode.name)?)?,
            ElementKind::Loss { mode, l } => CircuitElement::loss(*l, idx(&mode.name)?)?,
            ElementKind::Mod { mode, eps, delta } => {
                CircuitElement::modulator(*eps, *delta, idx(&mode.name)?)?
            }
        };
        c.push(e.name.as_ref().map(|n| n.name.as_str()), el)?;
    }

    let homodyne_term = |label: &str| -> Result<QuadratureTerm<T>> {
        ast.readouts
            .iter()
            .find_map(|r| match r {
                ReadoutAst::Homodyne { name, mode, angle, weight, .. } if name.name == label => {
                    Some((mode, angle, weight))
                }
                _ => None,
            })
            .ok_or_else(|| invalid(format!("unknown homodyne '{label}'")))
            .and_then(|(mode, angle, weight)| {
                Ok(QuadratureTerm::new(
                    c.mode_index(&mode.name)?,
                    angle.value(),
                    weight.unwrap_or_else(T::one),
                ))
            })
    };
    let consumed: Vec<&str> = ast
        .readouts
        .iter()
        .filter_map(|r| match r {
            ReadoutAst::Combine { terms, .. } => Some(terms.iter().map(|(_, t)| t.name.as_str())),
            _ => None,
        })
        .flatten()
        .collect();

    let mut plan = Vec::new();
    for r in &ast.readouts {
        match r {
            ReadoutAst::Homodyne { name, .. } => {
                if !consumed.contains(&name.name.as_str()) {
                    plan.push((name.name.clone(), vec![homodyne_term(&name.name)?]));
                }
            }
            ReadoutAst::Combine { name, terms, .. } => {
                let terms = terms
                    .iter()
                    .map(|(sign, id)| {
                        let mut t = homodyne_term(&id.name)?;
                        if *sign == Sign::Minus {
                            t.weight = -t.weight;
                        }
                        Ok(t)
                    })
                    .collect::<Result<Vec<_>>>()?;
                plan.push((name.name.clone(), terms));
            }
        }
    }
    for (label, terms) in plan {
        c.add_readout(label, terms)?;
    }
    Ok(c)
}
