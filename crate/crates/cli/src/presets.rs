// SPDX-License-Identifier: Apache-2.0

//! Built-in scenario files, one per published figure.

use crate::config::{ConfigError, ScenarioConfig};

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        /// `(name, config text)` pairs.
        pub const PRESETS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../presets/", $name, ".conf")))),*
        ];
    };
}

presets!("fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11");

pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn load_preset(name: &str) -> Result<ScenarioConfig, ConfigError> {
    let text = preset_text(name).ok_or_else(|| {
        let known: Vec<&str> = preset_names().collect();
        ConfigError::new("preset", format!("unknown preset `{name}`; known: {}", known.join(", ")))
    })?;
    ScenarioConfig::parse(text)
}
