use super::table::{insert_bit, remove_bit, DpTable};
use super::{DpError, Engine, Weight};
use crate::treedecomp::{NiceTreeDecomposition, NodeKind};

/// Replays the tables top-down from the root entry `choice = (ℓ, S)` and
/// returns the sorted vertex set whose cut the entry describes.
///
/// At forget nodes the operand that produced the stored entry is located
/// again, trying "vertex selected" first as the forward pass does; at join
/// nodes a split `ℓ₁ + ℓ₂ = ℓ` reproducing the entry is searched.
pub fn reconstruct_witness<W: Weight>(
    engine: &Engine<'_, W>,
    tables: &[DpTable<W>],
    nd: &NiceTreeDecomposition,
    choice: (usize, usize),
) -> Result<Vec<usize>, DpError> {
    let mut selected = vec![false; nd.n()];
    let mut stack = vec![(nd.root(), choice.0, choice.1)];
    while let Some((i, level, mask)) = stack.pop() {
        let node = nd.node(i);
        let table = &tables[i];
        for v in table.members(mask) {
            selected[v] = true;
        }
        let stored = table.get(level, mask);
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                stack.push((node.children[0], level, remove_bit(mask, pos)));
            }
            NodeKind::Forget(v) => {
                let j = node.children[0];
                let child = &tables[j];
                let pos = child.bag.binary_search(&v).expect("forgotten vertex in child bag");
                let with = insert_bit(mask, pos, true);
                let without = insert_bit(mask, pos, false);
                if level >= 1 && child.get(level - 1, with) == stored {
                    stack.push((j, level - 1, with));
                } else if level <= child.forgotten && child.get(level, without) == stored {
                    stack.push((j, level, without));
                } else {
                    return Err(DpError::InternalInconsistency(format!(
                        "forget node {i}: no operand reproduces entry ({level}, {mask:#b})"
                    )));
                }
            }
            NodeKind::Join => {
                let (j, k) = (node.children[0], node.children[1]);
                let (left, right) = (&tables[j], &tables[k]);
                let correction = &engine.bag_cut_profile(&node.bag)[mask];
                let lo = level.saturating_sub(right.forgotten);
                let hi = level.min(left.forgotten);
                let split = (lo..=hi).find(|&l1| {
                    left.get(l1, mask).1.add(right.get(level - l1, mask).1).sub(correction) == *stored.1
                });
                match split {
                    Some(l1) => {
                        stack.push((j, l1, mask));
                        stack.push((k, level - l1, mask));
                    }
                    None => {
                        return Err(DpError::InternalInconsistency(format!(
                            "join node {i}: no split reproduces entry ({level}, {mask:#b})"
                        )))
                    }
                }
            }
        }
    }
    Ok(selected
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(v, _)| v)
        .collect())
}
