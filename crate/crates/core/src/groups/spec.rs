//! JSON group and tower specifications.
//!
//! Groups:
//! `{"type":"perm","degree":3,"generators":[[[1,2]],[[1,2,3]]]}` (1-based cycles),
//! `{"type":"cyclic","n":9}`, `{"type":"semidirect_cyclic","n":7,"k":3,"action":2}`,
//! `{"type":"dihedral","n":4}` (order 2n), `{"type":"symmetric","n":4}`,
//! `{"type":"alternating","n":4}`.
//!
//! Towers: `{"type":"cyclic_tower","p":3,"depth":4}`,
//! `{"type":"semidirect_tower","p":7,"k":3,"depth":2}`,
//! `{"type":"cyclic_chain","orders":[3,9,9]}`,
//! `{"type":"constant_tower","group":{..},"depth":3}`. Any group spec is also
//! accepted as a tower and read as the constant tower of depth 2.
//! Tower specs may carry `"p"` and `"unbounded_defect"`.

use serde::{Deserialize, Serialize};

use super::group::{perm_from_cycles, FiniteGroup};
use super::tower::GroupTower;
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Perm { degree: usize, generators: Vec<Vec<Vec<usize>>> },
    Cyclic { n: usize },
    SemidirectCyclic { n: usize, k: usize, action: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Alternating { n: usize },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::BadSpec(e.to_string()))
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|c| perm_from_cycles(*degree, c))
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_permutations(*degree, &gens)
            }
            GroupSpec::Cyclic { n } if *n >= 1 => Ok(FiniteGroup::cyclic(*n)),
            GroupSpec::Cyclic { .. } => Err(GroupError::BadSpec("cyclic order must be positive".into())),
            GroupSpec::SemidirectCyclic { n, k, action } => FiniteGroup::semidirect_cyclic(*n, *k, *action),
            GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
            GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
            GroupSpec::Alternating { n } => FiniteGroup::alternating(*n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum TowerKind {
    CyclicTower { p: usize, depth: usize },
    SemidirectTower { p: usize, k: usize, depth: usize },
    CyclicChain {
        orders: Vec<usize>,
        #[serde(default)]
        p: Option<usize>,
        #[serde(default)]
        unbounded_defect: bool,
    },
    ConstantTower {
        group: GroupSpec,
        depth: usize,
        #[serde(default)]
        p: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerSpec {
    kind: Result<TowerKind, (GroupSpec, Option<usize>)>,
}

impl TowerSpec {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| GroupError::BadSpec(e.to_string()))?;
        if let Ok(kind) = serde_json::from_value::<TowerKind>(value.clone()) {
            return Ok(TowerSpec { kind: Ok(kind) });
        }
        let mut v = value;
        let p = v
            .as_object_mut()
            .and_then(|o| o.remove("p"))
            .and_then(|p| p.as_u64())
            .map(|p| p as usize);
        let g: GroupSpec = serde_json::from_value(v).map_err(|e| GroupError::BadSpec(e.to_string()))?;
        Ok(TowerSpec { kind: Err((g, p)) })
    }

    pub fn cyclic(p: usize, depth: usize) -> Self {
        TowerSpec { kind: Ok(TowerKind::CyclicTower { p, depth }) }
    }

    /// The prime stated in the spec, if any.
    pub fn prime(&self) -> Option<usize> {
        match &self.kind {
            Ok(TowerKind::CyclicTower { p, .. }) | Ok(TowerKind::SemidirectTower { p, .. }) => Some(*p),
            Ok(TowerKind::CyclicChain { p, .. }) | Ok(TowerKind::ConstantTower { p, .. }) => *p,
            Err((_, p)) => *p,
        }
    }

    pub fn build(&self) -> Result<GroupTower, GroupError> {
        match &self.kind {
            Ok(TowerKind::CyclicTower { p, depth }) => GroupTower::cyclic_tower(*p, *depth),
            Ok(TowerKind::SemidirectTower { p, k, depth }) => GroupTower::semidirect_tower(*p, *k, *depth),
            Ok(TowerKind::CyclicChain { orders, unbounded_defect, .. }) => {
                Ok(GroupTower::cyclic_chain(orders)?.with_unbounded_defect(*unbounded_defect))
            }
            Ok(TowerKind::ConstantTower { group, depth, .. }) => GroupTower::constant(group.build()?, *depth),
            Err((g, _)) => GroupTower::constant(g.build()?, 2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_groups() {
        let s = GroupSpec::parse(r#"{"type":"perm","degree":3,"generators":[[[1,2]],[[1,2,3]]]}"#).unwrap();
        assert_eq!(s.build().unwrap().order(), 6);
        let s = GroupSpec::parse(r#"{"type":"semidirect_cyclic","n":7,"k":3,"action":2}"#).unwrap();
        assert_eq!(s.build().unwrap().order(), 21);
        assert!(GroupSpec::parse(r#"{"type":"perm","degree":3}"#).is_err());
        assert!(GroupSpec::parse("not json").is_err());
        let bad = GroupSpec::parse(r#"{"type":"perm","degree":3,"generators":[[[1,4]]]}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn parse_towers() {
        let t = TowerSpec::parse(r#"{"type":"cyclic_tower","p":3,"depth":4}"#).unwrap();
        assert_eq!(t.prime(), Some(3));
        assert_eq!(t.build().unwrap().depth(), 4);
        let t = TowerSpec::parse(r#"{"type":"cyclic","n":6,"p":3}"#).unwrap();
        assert_eq!(t.prime(), Some(3));
        assert!(!t.build().unwrap().unbounded_defect());
        let t = TowerSpec::parse(r#"{"type":"constant_tower","group":{"type":"symmetric","n":3},"depth":3}"#).unwrap();
        assert_eq!(t.build().unwrap().depth(), 3);
        assert!(TowerSpec::parse(r#"{"type":"cyclic_tower","p":3}"#).is_err());
    }
}
