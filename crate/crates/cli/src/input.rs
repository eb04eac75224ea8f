use std::fs;
use std::path::Path;

use bfinv_core::indexthy::ManifoldProfile;
use bfinv_core::lattice::{presets, BilinearLattice, LatticeInvolution};
use bfinv_core::realization::FramedLinkMatrix;
use bfinv_core::IntMatrix;
use serde::Deserialize;

/// Input document; every field is optional and commands ask for what they
/// need.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    gram: Option<IntMatrix>,
    involution: Option<IntMatrix>,
    profile: Option<ManifoldProfile>,
    link: Option<IntMatrix>,
    #[serde(default)]
    invariant_disks: bool,
}

/// Resolved data from a preset or an input file.
#[derive(Debug, Default)]
pub struct Source {
    pub name: String,
    pub lattice: Option<BilinearLattice>,
    pub involution: Option<LatticeInvolution>,
    pub profile: Option<ManifoldProfile>,
    pub link: Option<FramedLinkMatrix>,
}

impl Source {
    pub fn preset(name: &str) -> Result<Self, String> {
        let (lattice, involution) = presets::named(name)
            .ok_or_else(|| format!("unknown preset {name:?} (known: {})", presets::NAMES.join(", ")))?;
        Ok(Source {
            name: name.to_string(),
            lattice: Some(lattice),
            involution: Some(involution),
            profile: ManifoldProfile::preset(name),
            link: FramedLinkMatrix::preset(name),
        })
    }

    pub fn file(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, name: &str) -> Result<Self, String> {
        let doc: InputDoc = serde_json::from_str(text).map_err(|e| format!("malformed input {name}: {e}"))?;
        let lattice = doc.gram.map(BilinearLattice::new).transpose().map_err(|e| format!("gram: {e}"))?;
        let involution = doc.involution.map(LatticeInvolution::new).transpose().map_err(|e| format!("involution: {e}"))?;
        let link = doc
            .link
            .map(|m| FramedLinkMatrix::new(m, doc.invariant_disks))
            .transpose()
            .map_err(|e| format!("link: {e}"))?;
        Ok(Source { name: name.to_string(), lattice, involution, profile: doc.profile, link })
    }

    pub fn lattice(&self) -> Result<&BilinearLattice, String> {
        self.lattice.as_ref().ok_or_else(|| missing(&self.name, "gram"))
    }

    /// The involution, defaulting to the identity when only a form is given.
    pub fn involution(&self) -> Result<LatticeInvolution, String> {
        match &self.involution {
            Some(g) => Ok(g.clone()),
            None => Ok(LatticeInvolution::identity(self.lattice()?.rank())),
        }
    }

    pub fn profile(&self) -> Result<&ManifoldProfile, String> {
        self.profile.as_ref().ok_or_else(|| missing(&self.name, "profile"))
    }
}

fn missing(source: &str, field: &str) -> String {
    format!("{source} provides no {field:?}")
}
