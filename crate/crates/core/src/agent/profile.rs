use serde::{Deserialize, Serialize};

use super::AgentError;

/// Hand-authored knowledge about a hero archetype.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeroProfile {
    pub name: String,
    /// Reach other units should respect; may exceed the auto-attack range.
    pub effective_range: f64,
    pub tactical_value: f64,
    pub is_melee: bool,
}

impl HeroProfile {
    pub fn new(name: &str, effective_range: f64, tactical_value: f64, is_melee: bool) -> Self {
        Self {
            name: name.to_owned(),
            effective_range,
            tactical_value,
            is_melee,
        }
    }

    /// Field names violating the profile invariants for a hero with the given attack range.
    pub fn invalid_fields(&self, attack_range: f64) -> Vec<&'static str> {
        let mut bad = Vec::new();
        if self.name.is_empty() {
            bad.push("name");
        }
        if !(self.effective_range.is_finite() && self.effective_range >= attack_range) {
            bad.push("effective_range");
        }
        if !(self.tactical_value.is_finite() && self.tactical_value > 0.0) {
            bad.push("tactical_value");
        }
        bad
    }
}

/// Named profiles, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProfileTable {
    profiles: Vec<HeroProfile>,
}

impl Default for ProfileTable {
    fn default() -> Self {
        Self::archetypes()
    }
}

impl ProfileTable {
    pub fn new(profiles: Vec<HeroProfile>) -> Result<Self, AgentError> {
        for (i, p) in profiles.iter().enumerate() {
            if profiles[..i].iter().any(|q| q.name == p.name) {
                return Err(AgentError::DuplicateProfile(p.name.clone()));
            }
        }
        Ok(Self { profiles })
    }

    pub fn archetypes() -> Self {
        Self {
            profiles: vec![
                HeroProfile::new("ranged-carry", 650.0, 500.0, false),
                HeroProfile::new("mage", 700.0, 450.0, false),
                HeroProfile::new("melee-bruiser", 450.0, 600.0, true),
            ],
        }
    }

    pub fn from_json(text: &str) -> Result<Self, AgentError> {
        let profiles: Vec<HeroProfile> = serde_json::from_str(text).map_err(|e| AgentError::ProfileJson(e.to_string()))?;
        Self::new(profiles)
    }

    pub fn get(&self, name: &str) -> Option<&HeroProfile> {
        self.profiles.iter().find(|p| p.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &HeroProfile> {
        self.profiles.iter()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = ProfileTable::archetypes();
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.starts_with("[{\"name\":\"ranged-carry\""));
        assert_eq!(ProfileTable::from_json(&text).unwrap(), t);
    }

    #[test]
    fn duplicates_rejected() {
        let p = HeroProfile::new("x", 600.0, 1.0, false);
        assert!(matches!(
            ProfileTable::new(vec![p.clone(), p]),
            Err(AgentError::DuplicateProfile(n)) if n == "x"
        ));
    }

    #[test]
    fn range_invariant() {
        let p = HeroProfile::new("bruiser", 450.0, 600.0, true);
        assert!(p.invalid_fields(150.0).is_empty());
        assert_eq!(p.invalid_fields(550.0), vec!["effective_range"]);
        assert_eq!(HeroProfile::new("", 1.0, 0.0, false).invalid_fields(0.0), vec!["name", "tactical_value"]);
    }
}
