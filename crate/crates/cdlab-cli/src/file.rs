//! The group-description file format: versioned TOML with exactly one group
//! section. Unknown fields are rejected and the canonical serialization is
//! stable, so files round-trip byte-exactly.

use cdlab::constructions::{ConstructionSpec, Variant};
use cdlab::{Class2Data, FiniteGroup};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub format_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<PermutationDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_gfp: Option<MatrixDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class2: Option<Class2Desc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConstructionDesc {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<Box<ConstructionDesc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<Box<ConstructionDesc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_center_gens: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_center_gens: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PermutationDesc {
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixDesc {
    pub p: u32,
    pub dim: usize,
    /// row-major entries, one flat array per generator
    pub generators: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Class2Desc {
    pub p: u32,
    pub d: usize,
    pub e: usize,
    pub commutators: Vec<CommutatorEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CommutatorEntry {
    pub i: usize,
    pub j: usize,
    pub z: Vec<u8>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile, CliError> {
        let file: GroupFile =
            toml::from_str(text).map_err(|e| CliError::Parse(format!("group file: {e}")))?;
        if file.format_version != FORMAT_VERSION {
            return Err(CliError::Parse(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        let sections = [
            file.construction.is_some(),
            file.permutation.is_some(),
            file.matrix_gfp.is_some(),
            file.class2.is_some(),
        ]
        .iter()
        .filter(|&&x| x)
        .count();
        if sections != 1 {
            return Err(CliError::Parse(format!(
                "exactly one group section required, found {sections}"
            )));
        }
        Ok(file)
    }

    /// Stable serialization; files written this way reparse to the same
    /// value and reserialize to the same bytes.
    #[allow(dead_code)] // exercised by the round-trip tests
    pub fn canonical_string(&self) -> String {
        toml::to_string(self).expect("group files always serialize")
    }

    /// Class-2 presentation when the description has one (needed for the
    /// fast path, which never builds a table).
    pub fn class2_data(&self) -> Result<Option<Class2Data>, CliError> {
        if let Some(c) = &self.class2 {
            let upper: Vec<((usize, usize), Vec<u8>)> =
                c.commutators.iter().map(|e| ((e.i, e.j), e.z.clone())).collect();
            let data = Class2Data::new(c.p, c.d, c.e, &upper, c.powers.clone())?;
            return Ok(Some(data));
        }
        if let Some(desc) = &self.construction {
            let spec = desc.to_spec()?;
            return match spec.class2_data() {
                Some(data) => Ok(Some(data?)),
                None => Ok(None),
            };
        }
        Ok(None)
    }

    pub fn build_group(&self) -> Result<FiniteGroup, CliError> {
        if let Some(p) = &self.permutation {
            return Ok(FiniteGroup::from_permutations(&p.generators)?);
        }
        if let Some(m) = &self.matrix_gfp {
            return Ok(FiniteGroup::from_matrices_gfp(m.p, m.dim, &m.generators)?);
        }
        if let Some(_c) = &self.class2 {
            let data = self.class2_data()?.expect("class2 section present");
            return Ok(FiniteGroup::from_class2_data(data)?);
        }
        if let Some(desc) = &self.construction {
            return Ok(desc.to_spec()?.build()?);
        }
        Err(CliError::Parse("no group section".into()))
    }
}

impl ConstructionDesc {
    pub fn to_spec(&self) -> Result<ConstructionSpec, CliError> {
        use ConstructionSpec::*;
        let p = || {
            self.p.ok_or_else(|| CliError::Parse(format!("construction {} needs p", self.name)))
        };
        let n = || {
            self.n.ok_or_else(|| CliError::Parse(format!("construction {} needs n", self.name)))
        };
        let order = || {
            self.order
                .ok_or_else(|| CliError::Parse(format!("construction {} needs order", self.name)))
        };
        Ok(match self.name.as_str() {
            "cyclic" => Cyclic { n: n()? },
            "elementary_abelian" => ElementaryAbelian {
                p: p()?,
                k: self.k.ok_or_else(|| CliError::Parse("elementary_abelian needs k".into()))?,
            },
            "dihedral" => Dihedral { n: n()? },
            "quaternion" => Quaternion { order: order()? },
            "semidihedral" => Semidihedral { order: order()? },
            "modular" => Modular2 { order: order()? },
            "symmetric" => Symmetric { n: n()? },
            "extraspecial" => Extraspecial {
                p: p()?,
                variant: match self.variant.as_deref() {
                    Some("plus") => Variant::Plus,
                    Some("minus") => Variant::Minus,
                    other => {
                        return Err(CliError::Parse(format!(
                            "extraspecial variant must be plus or minus, got {other:?}"
                        )))
                    }
                },
            },
            "heisenberg" => Heisenberg { p: p()?, n: n()? },
            "width2_abelian" => Width2Abelian { p: p()? },
            "bigex" => Bigex { p: p()? },
            "bigex2" => Bigex2 { p: p()? },
            "bigex_factor" => BigexFactor { p: p()? },
            "direct_product" => {
                let (l, r) = self.components()?;
                DirectProduct { left: Box::new(l), right: Box::new(r) }
            }
            "central_product" => {
                let (l, r) = self.components()?;
                CentralProduct {
                    left: Box::new(l),
                    right: Box::new(r),
                    left_center_gens: self.left_center_gens.clone().unwrap_or_default(),
                    right_center_gens: self.right_center_gens.clone().unwrap_or_default(),
                }
            }
            other => return Err(CliError::Parse(format!("unknown construction name {other:?}"))),
        })
    }

    fn components(&self) -> Result<(ConstructionSpec, ConstructionSpec), CliError> {
        let l = self
            .left
            .as_ref()
            .ok_or_else(|| CliError::Parse(format!("{} needs a left component", self.name)))?;
        let r = self
            .right
            .as_ref()
            .ok_or_else(|| CliError::Parse(format!("{} needs a right component", self.name)))?;
        Ok((l.to_spec()?, r.to_spec()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_byte_exact() {
        let text = r#"
format_version = 1

[construction]
name = "extraspecial"
p = 5
variant = "plus"
"#;
        let parsed = GroupFile::parse(text).unwrap();
        let canon = parsed.canonical_string();
        let reparsed = GroupFile::parse(&canon).unwrap();
        assert_eq!(parsed, reparsed);
        assert_eq!(canon, reparsed.canonical_string());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"
format_version = 1
surprise = true

[construction]
name = "cyclic"
n = 6
"#;
        assert!(GroupFile::parse(text).is_err());
        let nested = r#"
format_version = 1

[construction]
name = "cyclic"
n = 6
extra = 1
"#;
        assert!(GroupFile::parse(nested).is_err());
    }

    #[test]
    fn exactly_one_section() {
        let text = r#"
format_version = 1

[construction]
name = "cyclic"
n = 6

[permutation]
generators = [[1, 0]]
"#;
        assert!(GroupFile::parse(text).is_err());
        assert!(GroupFile::parse("format_version = 1\n").is_err());
    }

    #[test]
    fn class2_section_builds() {
        let text = r#"
format_version = 1

[class2]
p = 2
d = 2
e = 1
commutators = [{ i = 0, j = 1, z = [1] }]
powers = [[1], [1]]
"#;
        let file = GroupFile::parse(text).unwrap();
        let g = file.build_group().unwrap();
        assert_eq!(g.order(), 8);
        // quaternion group: a single involution
        let inv = (1..8).filter(|&x| g.element_order(x).unwrap() == 2).count();
        assert_eq!(inv, 1);
    }

    #[test]
    fn nested_product_construction() {
        let text = r#"
format_version = 1

[construction]
name = "direct_product"

[construction.left]
name = "dihedral"
n = 4

[construction.right]
name = "cyclic"
n = 9
"#;
        let file = GroupFile::parse(text).unwrap();
        assert_eq!(file.build_group().unwrap().order(), 72);
    }
}
