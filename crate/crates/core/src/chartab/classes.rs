use super::group::GroupTable;

/// A partition of a group into conjugacy classes.
///
/// Classes are ordered by their smallest element, which is also the
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
    pub identity: u32,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, c: usize) -> u32 {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }
}

/// Orbits of `0..n` under the maps `step(g, x)` for `g` in `0..gens`.
pub fn orbit_partition(n: usize, gens: usize, step: impl Fn(usize, u32) -> u32) -> (Vec<Vec<u32>>, Vec<u32>) {
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = id;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for g in 0..gens {
                let y = step(g, x);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (classes, class_of)
}

pub fn conjugacy_classes(group: &GroupTable) -> ConjugacyClasses {
    let n = group.order();
    let (classes, class_of) = orbit_partition(n, n, |g, x| group.conj(g as u32, x));
    ConjugacyClasses {
        classes,
        class_of,
        identity: group.identity(),
    }
}
