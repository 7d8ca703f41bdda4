//! Network architecture descriptions and their analytical layer costs.
//!
//! A network document is JSON:
//!
//! ```text
//! { "name": "tiny", "batch": 1,
//!   "layers": [ { "name": "conv1", "kind": "conv",
//!                 "in": [227, 227, 3], "kernel": [11, 11], "out": [55, 55, 96],
//!                 "stride": 4, "pad": 0 } ] }
//! ```
//!
//! Output dimensions are always taken as declared. Grouped convolutions are
//! written with the per-group input channel count in `in[2]`.
//!
//! All cost arithmetic is exact `u64`; overflow is reported as an error.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

/// Bytes per stored value (32-bit floats).
pub const BYTES_PER_VALUE: u64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("layer `{layer}`: missing {field}")]
    MissingField { layer: String, field: &'static str },
    #[error("layer `{layer}`: {field} must be {bound}, got {value}")]
    OutOfRange {
        layer: String,
        field: &'static str,
        bound: &'static str,
        value: i64,
    },
    #[error("batch must be >= 1, got {0}")]
    InvalidBatch(i64),
    #[error("duplicate layer name `{0}`")]
    DuplicateLayer(String),
    #[error("network has no layers")]
    EmptyNetwork,
    #[error("layer `{layer}` is {actual}, expected {expected}")]
    WrongKind {
        layer: String,
        actual: LayerKind,
        expected: &'static str,
    },
    #[error("layer `{0}`: cost overflows the 64-bit unsigned range")]
    Overflow(String),
    #[error("unknown layer kind `{0}`")]
    UnknownKind(String),
    #[error("malformed cost table: {0}")]
    CostTable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Conv,
    Dwsep,
    Fc,
    Pool,
    Relu,
    Norm,
    Other,
}

impl LayerKind {
    pub const ALL: [LayerKind; 7] = [
        LayerKind::Conv,
        LayerKind::Dwsep,
        LayerKind::Fc,
        LayerKind::Pool,
        LayerKind::Relu,
        LayerKind::Norm,
        LayerKind::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LayerKind::Conv => "conv",
            LayerKind::Dwsep => "dwsep",
            LayerKind::Fc => "fc",
            LayerKind::Pool => "pool",
            LayerKind::Relu => "relu",
            LayerKind::Norm => "norm",
            LayerKind::Other => "other",
        }
    }

    /// Conv and depthwise-separable layers are the ones counted in `total_conv_mac`.
    pub fn is_convolutional(self) -> bool {
        matches!(self, LayerKind::Conv | LayerKind::Dwsep)
    }
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LayerKind {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LayerKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| NetError::UnknownKind(s.to_string()))
    }
}

/// Feature-map extent: width, height, channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims3 {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Dims3 {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Self { x, y, z }
    }
}

/// Filter spatial extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kernel {
    pub x: u64,
    pub y: u64,
}

impl Kernel {
    pub fn new(x: u64, y: u64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSpec {
    pub name: String,
    pub kind: LayerKind,
    pub input: Option<Dims3>,
    pub kernel: Option<Kernel>,
    pub output: Option<Dims3>,
    /// Informational; only used by [`NetworkSpec::shape_warnings`].
    pub stride: Option<u64>,
    pub pad: Option<u64>,
}

impl LayerSpec {
    /// A conv layer with the given dims and no stride/pad annotation.
    pub fn conv(name: &str, input: Dims3, kernel: Kernel, output: Dims3) -> Self {
        Self::with_kind(name, LayerKind::Conv, input, kernel, output)
    }

    pub fn dwsep(name: &str, input: Dims3, kernel: Kernel, output: Dims3) -> Self {
        Self::with_kind(name, LayerKind::Dwsep, input, kernel, output)
    }

    fn with_kind(name: &str, kind: LayerKind, input: Dims3, kernel: Kernel, output: Dims3) -> Self {
        Self {
            name: name.to_string(),
            kind,
            input: Some(input),
            kernel: Some(kernel),
            output: Some(output),
            stride: None,
            pad: None,
        }
    }

    fn require_input(&self) -> Result<Dims3, NetError> {
        self.input.ok_or_else(|| self.missing("in"))
    }

    fn require_kernel(&self) -> Result<Kernel, NetError> {
        self.kernel.ok_or_else(|| self.missing("kernel"))
    }

    fn require_output(&self) -> Result<Dims3, NetError> {
        self.output.ok_or_else(|| self.missing("out"))
    }

    fn missing(&self, field: &'static str) -> NetError {
        NetError::MissingField {
            layer: self.name.clone(),
            field,
        }
    }

    fn check_invariants(&self) -> Result<(), NetError> {
        match self.kind {
            LayerKind::Conv | LayerKind::Dwsep => {
                self.require_input()?;
                self.require_kernel()?;
                self.require_output()?;
            }
            LayerKind::Fc => {
                self.require_input()?;
                self.require_output()?;
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    pub name: String,
    pub batch: u64,
    pub layers: Vec<LayerSpec>,
}

/// A declared output extent that disagrees with the stride/pad arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeWarning {
    pub layer: String,
    pub axis: char,
    pub declared: u64,
    /// `None` when the padded input is smaller than the kernel.
    pub expected: Option<u64>,
}

impl fmt::Display for ShapeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expected {
            Some(e) => write!(
                f,
                "layer `{}`: declared O_{} = {} but stride/pad give {}",
                self.layer, self.axis, self.declared, e
            ),
            None => write!(
                f,
                "layer `{}`: padded input along {} is smaller than the kernel",
                self.layer, self.axis
            ),
        }
    }
}

impl NetworkSpec {
    /// Checks the network-level invariants: batch, non-empty, unique names,
    /// and per-layer required fields.
    pub fn validate(&self) -> Result<(), NetError> {
        if self.batch == 0 {
            return Err(NetError::InvalidBatch(0));
        }
        if self.layers.is_empty() {
            return Err(NetError::EmptyNetwork);
        }
        let mut seen = HashSet::new();
        for layer in &self.layers {
            if !seen.insert(layer.name.as_str()) {
                return Err(NetError::DuplicateLayer(layer.name.clone()));
            }
            layer.check_invariants()?;
        }
        Ok(())
    }

    /// Compares declared output width/height against
    /// `floor((I + 2*pad - K) / stride) + 1` for layers that carry both
    /// stride and pad.
    pub fn shape_warnings(&self) -> Vec<ShapeWarning> {
        let mut out = Vec::new();
        for layer in &self.layers {
            let (Some(i), Some(k), Some(o), Some(stride), Some(pad)) = (
                layer.input,
                layer.kernel,
                layer.output,
                layer.stride,
                layer.pad,
            ) else {
                continue;
            };
            for (axis, inp, ker, declared) in [('x', i.x, k.x, o.x), ('y', i.y, k.y, o.y)] {
                let padded = inp as i128 + 2 * pad as i128 - ker as i128;
                let expected = (padded >= 0).then(|| (padded / stride as i128) as u64 + 1);
                if expected != Some(declared) {
                    out.push(ShapeWarning {
                        layer: layer.name.clone(),
                        axis,
                        declared,
                        expected,
                    });
                }
            }
        }
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    name: String,
    batch: i64,
    layers: Vec<RawLayer>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayer {
    name: String,
    kind: LayerKind,
    #[serde(rename = "in")]
    input: Option<[i64; 3]>,
    kernel: Option<[i64; 2]>,
    out: Option<[i64; 3]>,
    stride: Option<i64>,
    pad: Option<i64>,
}

fn positive(layer: &str, field: &'static str, v: i64) -> Result<u64, NetError> {
    if v >= 1 {
        Ok(v as u64)
    } else {
        Err(NetError::OutOfRange {
            layer: layer.to_string(),
            field,
            bound: "positive",
            value: v,
        })
    }
}

impl RawLayer {
    fn into_spec(self) -> Result<LayerSpec, NetError> {
        let name = self.name;
        let dims = |field, d: Option<[i64; 3]>| -> Result<Option<Dims3>, NetError> {
            d.map(|[x, y, z]| {
                Ok(Dims3::new(
                    positive(&name, field, x)?,
                    positive(&name, field, y)?,
                    positive(&name, field, z)?,
                ))
            })
            .transpose()
        };
        let input = dims("in", self.input)?;
        let output = dims("out", self.out)?;
        let kernel = self
            .kernel
            .map(|[x, y]| {
                Ok::<_, NetError>(Kernel::new(
                    positive(&name, "kernel", x)?,
                    positive(&name, "kernel", y)?,
                ))
            })
            .transpose()?;
        let stride = self
            .stride
            .map(|s| positive(&name, "stride", s))
            .transpose()?;
        let pad = self
            .pad
            .map(|p| {
                if p >= 0 {
                    Ok(p as u64)
                } else {
                    Err(NetError::OutOfRange {
                        layer: name.clone(),
                        field: "pad",
                        bound: "non-negative",
                        value: p,
                    })
                }
            })
            .transpose()?;
        Ok(LayerSpec {
            name,
            kind: self.kind,
            input,
            kernel,
            output,
            stride,
            pad,
        })
    }
}

/// Parses and validates a network-definition document.
pub fn parse_network(text: &str) -> Result<NetworkSpec, NetError> {
    let raw: RawNetwork = serde_json::from_str(text).map_err(|e| NetError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.batch < 1 {
        return Err(NetError::InvalidBatch(raw.batch));
    }
    let layers = raw
        .layers
        .into_iter()
        .map(RawLayer::into_spec)
        .collect::<Result<Vec<_>, _>>()?;
    let net = NetworkSpec {
        name: raw.name,
        batch: raw.batch as u64,
        layers,
    };
    net.validate()?;
    Ok(net)
}

fn product(layer: &LayerSpec, factors: &[u64]) -> Result<u64, NetError> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or_else(|| NetError::Overflow(layer.name.clone()))
}

fn sum(layer: &LayerSpec, terms: &[u64]) -> Result<u64, NetError> {
    terms
        .iter()
        .try_fold(0u64, |acc, &t| acc.checked_add(t))
        .ok_or_else(|| NetError::Overflow(layer.name.clone()))
}

fn expect_kind(layer: &LayerSpec, ok: bool, expected: &'static str) -> Result<(), NetError> {
    if ok {
        Ok(())
    } else {
        Err(NetError::WrongKind {
            layer: layer.name.clone(),
            actual: layer.kind,
            expected,
        })
    }
}

/// MACs of a standard convolution: `O_x * O_y * O_z * K_x * K_y * I_z`.
pub fn mac_conv(layer: &LayerSpec) -> Result<u64, NetError> {
    expect_kind(layer, layer.kind == LayerKind::Conv, "conv")?;
    let (i, k, o) = (
        layer.require_input()?,
        layer.require_kernel()?,
        layer.require_output()?,
    );
    product(layer, &[o.x, o.y, o.z, k.x, k.y, i.z])
}

/// MACs of a depthwise-separable block: the depthwise term
/// `O_x * O_y * K_x * K_y * I_z` plus the pointwise term `I_z * O_z * O_x * O_y`.
pub fn mac_dwsep(layer: &LayerSpec) -> Result<u64, NetError> {
    expect_kind(layer, layer.kind == LayerKind::Dwsep, "dwsep")?;
    let (i, k, o) = (
        layer.require_input()?,
        layer.require_kernel()?,
        layer.require_output()?,
    );
    let depthwise = product(layer, &[o.x, o.y, k.x, k.y, i.z])?;
    let pointwise = product(layer, &[i.z, o.z, o.x, o.y])?;
    sum(layer, &[depthwise, pointwise])
}

/// Bytes for input map, filter weights and output map at 32-bit precision.
pub fn storage_bytes(layer: &LayerSpec) -> Result<u64, NetError> {
    expect_kind(layer, layer.kind.is_convolutional(), "conv or dwsep")?;
    let (i, k, o) = (
        layer.require_input()?,
        layer.require_kernel()?,
        layer.require_output()?,
    );
    let values = sum(
        layer,
        &[
            product(layer, &[i.x, i.y, i.z])?,
            product(layer, &[k.x, k.y, i.z, o.z])?,
            product(layer, &[o.x, o.y, o.z])?,
        ],
    )?;
    product(layer, &[values, BYTES_PER_VALUE])
}

fn fc_costs(layer: &LayerSpec) -> Result<(u64, u64), NetError> {
    let (i, o) = (layer.require_input()?, layer.require_output()?);
    let flat_in = product(layer, &[i.x, i.y, i.z])?;
    let flat_out = product(layer, &[o.x, o.y, o.z])?;
    let mac = product(layer, &[flat_in, flat_out])?;
    let values = sum(layer, &[flat_in, mac, flat_out])?;
    Ok((mac, product(layer, &[values, BYTES_PER_VALUE])?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostRow {
    pub layer: String,
    pub kind: LayerKind,
    pub mac: u64,
    pub storage_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    pub rows: Vec<CostRow>,
    /// Sum of `mac` over conv and dwsep rows.
    pub total_conv_mac: u64,
    pub total_storage_bytes: u64,
}

impl CostBreakdown {
    /// Builds a breakdown from rows, recomputing the totals.
    pub fn from_rows(rows: Vec<CostRow>) -> Result<Self, NetError> {
        let mut total_conv_mac = 0u64;
        let mut total_storage_bytes = 0u64;
        for r in &rows {
            if r.kind.is_convolutional() {
                total_conv_mac = total_conv_mac
                    .checked_add(r.mac)
                    .ok_or_else(|| NetError::Overflow("total_conv_mac".into()))?;
            }
            total_storage_bytes = total_storage_bytes
                .checked_add(r.storage_bytes)
                .ok_or_else(|| NetError::Overflow("total_storage_bytes".into()))?;
        }
        Ok(Self {
            rows,
            total_conv_mac,
            total_storage_bytes,
        })
    }

    /// All MACs including fc layers.
    pub fn total_mac(&self) -> u64 {
        self.rows.iter().map(|r| r.mac).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["layer", "kind", "mac", "storage_bytes"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.layer.as_str(),
                r.kind.as_str(),
                &r.mac.to_string(),
                &r.storage_bytes.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn from_csv(text: &str) -> Result<Self, NetError> {
        let bad = |e: csv::Error| NetError::CostTable(e.to_string());
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let headers = rdr.headers().map_err(bad)?.clone();
        if headers != vec!["layer", "kind", "mac", "storage_bytes"] {
            return Err(NetError::CostTable(format!(
                "unexpected header {headers:?}"
            )));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(bad)?;
            let num = |i: usize| {
                rec[i]
                    .parse::<u64>()
                    .map_err(|e| NetError::CostTable(format!("{}: {e}", &rec[i])))
            };
            rows.push(CostRow {
                layer: rec[0].to_string(),
                kind: rec[1].parse()?,
                mac: num(2)?,
                storage_bytes: num(3)?,
            });
        }
        Self::from_rows(rows)
    }
}

/// Per-layer MAC and storage costs for the whole network, multiplied by the batch size.
///
/// Pool, relu, norm and other layers carry zero cost. Fc layers report
/// `flat_in * flat_out` MACs but are excluded from `total_conv_mac`.
pub fn network_costs(net: &NetworkSpec) -> Result<CostBreakdown, NetError> {
    net.validate()?;
    let mut rows = Vec::with_capacity(net.layers.len());
    for layer in &net.layers {
        let (mac, storage) = match layer.kind {
            LayerKind::Conv => (mac_conv(layer)?, storage_bytes(layer)?),
            LayerKind::Dwsep => (mac_dwsep(layer)?, storage_bytes(layer)?),
            LayerKind::Fc => fc_costs(layer)?,
            LayerKind::Pool | LayerKind::Relu | LayerKind::Norm | LayerKind::Other => (0, 0),
        };
        rows.push(CostRow {
            layer: layer.name.clone(),
            kind: layer.kind,
            mac: product(layer, &[mac, net.batch])?,
            storage_bytes: product(layer, &[storage, net.batch])?,
        });
    }
    CostBreakdown::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_conv() -> LayerSpec {
        LayerSpec::conv(
            "c",
            Dims3::new(1, 1, 1),
            Kernel::new(1, 1),
            Dims3::new(1, 1, 1),
        )
    }

    #[test]
    fn parses_single_unit_layer() {
        let net = parse_network(
            r#"{"name":"unit","batch":1,"layers":[
                {"name":"c","kind":"conv","in":[1,1,1],"kernel":[1,1],"out":[1,1,1]}]}"#,
        )
        .unwrap();
        assert_eq!(net.layers.len(), 1);
        assert_eq!(net.layers[0], unit_conv());
    }

    #[test]
    fn conv_without_kernel_is_rejected() {
        let err = parse_network(
            r#"{"name":"n","batch":1,"layers":[
                {"name":"c","kind":"conv","in":[1,1,1],"out":[1,1,1]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("missing kernel"), "{err}");
    }

    #[test]
    fn syntax_errors_report_position() {
        let err =
            parse_network("{\"name\": \"n\",\n  \"batch\": 1,\n  \"layers\": [,]}").unwrap_err();
        match err {
            NetError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_and_bad_values_are_rejected() {
        let extra =
            r#"{"name":"n","batch":1,"colour":"red","layers":[{"name":"p","kind":"pool"}]}"#;
        assert!(parse_network(extra)
            .unwrap_err()
            .to_string()
            .contains("unknown field"));

        let zero = r#"{"name":"n","batch":1,"layers":[
            {"name":"c","kind":"conv","in":[0,1,1],"kernel":[1,1],"out":[1,1,1]}]}"#;
        assert!(matches!(
            parse_network(zero),
            Err(NetError::OutOfRange {
                field: "in",
                value: 0,
                ..
            })
        ));

        let dup = r#"{"name":"n","batch":1,"layers":[
            {"name":"p","kind":"pool"},{"name":"p","kind":"relu"}]}"#;
        assert_eq!(
            parse_network(dup),
            Err(NetError::DuplicateLayer("p".into()))
        );

        let empty = r#"{"name":"n","batch":1,"layers":[]}"#;
        assert_eq!(parse_network(empty), Err(NetError::EmptyNetwork));

        let batch = r#"{"name":"n","batch":0,"layers":[{"name":"p","kind":"pool"}]}"#;
        assert_eq!(parse_network(batch), Err(NetError::InvalidBatch(0)));

        let kind = r#"{"name":"n","batch":1,"layers":[{"name":"p","kind":"lstm"}]}"#;
        assert!(matches!(parse_network(kind), Err(NetError::Syntax { .. })));
    }

    #[test]
    fn fc_requires_in_and_out() {
        let doc = r#"{"name":"n","batch":1,"layers":[{"name":"f","kind":"fc","in":[1,1,4096]}]}"#;
        assert!(parse_network(doc)
            .unwrap_err()
            .to_string()
            .contains("missing out"));
    }

    #[test]
    fn mac_conv_values() {
        assert_eq!(mac_conv(&unit_conv()).unwrap(), 1);
        let conv1 = LayerSpec::conv(
            "conv1",
            Dims3::new(227, 227, 3),
            Kernel::new(11, 11),
            Dims3::new(55, 55, 96),
        );
        assert_eq!(mac_conv(&conv1).unwrap(), 105_415_200);
    }

    #[test]
    fn mac_dwsep_values() {
        let unit = LayerSpec::dwsep(
            "d",
            Dims3::new(1, 1, 1),
            Kernel::new(1, 1),
            Dims3::new(1, 1, 1),
        );
        assert_eq!(mac_dwsep(&unit).unwrap(), 2);
        let block = LayerSpec::dwsep(
            "dw1",
            Dims3::new(112, 112, 32),
            Kernel::new(3, 3),
            Dims3::new(112, 112, 64),
        );
        assert_eq!(mac_dwsep(&block).unwrap(), 3_612_672 + 25_690_112);
        assert_eq!(mac_dwsep(&block).unwrap(), 29_302_784);
    }

    #[test]
    fn wrong_kind_is_an_error() {
        assert!(matches!(
            mac_dwsep(&unit_conv()),
            Err(NetError::WrongKind { .. })
        ));
    }

    #[test]
    fn storage_values() {
        assert_eq!(storage_bytes(&unit_conv()).unwrap(), 12);
        let conv1 = LayerSpec::conv(
            "conv1",
            Dims3::new(227, 227, 3),
            Kernel::new(11, 11),
            Dims3::new(55, 55, 96),
        );
        assert_eq!(storage_bytes(&conv1).unwrap(), 1_919_340);
        let small = LayerSpec::conv(
            "s",
            Dims3::new(2, 2, 2),
            Kernel::new(1, 1),
            Dims3::new(2, 2, 2),
        );
        assert_eq!(storage_bytes(&small).unwrap(), 80);
    }

    #[test]
    fn overflow_is_reported() {
        let huge = LayerSpec::conv(
            "huge",
            Dims3::new(1, 1, 1 << 20),
            Kernel::new(1 << 20, 1 << 20),
            Dims3::new(1 << 10, 1, 1),
        );
        assert_eq!(mac_conv(&huge), Err(NetError::Overflow("huge".into())));
    }

    #[test]
    fn batch_scales_totals() {
        let mut net = NetworkSpec {
            name: "unit".into(),
            batch: 1,
            layers: vec![unit_conv()],
        };
        assert_eq!(network_costs(&net).unwrap().total_conv_mac, 1);
        net.batch = 16;
        assert_eq!(network_costs(&net).unwrap().total_conv_mac, 16);
    }

    #[test]
    fn fc_and_pointwise_layers_excluded_from_conv_total() {
        let net = parse_network(
            r#"{"name":"n","batch":1,"layers":[
                {"name":"c","kind":"conv","in":[2,2,2],"kernel":[1,1],"out":[2,2,2]},
                {"name":"r","kind":"relu"},
                {"name":"f","kind":"fc","in":[2,2,2],"out":[1,1,10]}]}"#,
        )
        .unwrap();
        let costs = network_costs(&net).unwrap();
        assert_eq!(costs.total_conv_mac, 2 * 2 * 2 * 2);
        assert_eq!(costs.rows[1].mac, 0);
        assert_eq!(costs.rows[2].mac, 80);
        assert_eq!(costs.rows[2].storage_bytes, (8 + 80 + 10) * 4);
        assert_eq!(costs.total_mac(), 16 + 80);
    }

    #[test]
    fn stride_pad_mismatch_is_a_warning_not_an_error() {
        let net = parse_network(
            r#"{"name":"n","batch":1,"layers":[
                {"name":"ok","kind":"conv","in":[227,227,3],"kernel":[11,11],"out":[55,55,96],"stride":4,"pad":0},
                {"name":"off","kind":"conv","in":[224,224,3],"kernel":[7,7],"out":[113,112,64],"stride":2,"pad":3}]}"#,
        )
        .unwrap();
        let w = net.shape_warnings();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].layer, "off");
        assert_eq!(w[0].axis, 'x');
        assert_eq!(w[0].expected, Some(112));
    }

    #[test]
    fn cost_csv_round_trips() {
        let net = parse_network(
            r#"{"name":"n","batch":3,"layers":[
                {"name":"c","kind":"conv","in":[5,5,2],"kernel":[3,3],"out":[3,3,4]},
                {"name":"p","kind":"pool"}]}"#,
        )
        .unwrap();
        let costs = network_costs(&net).unwrap();
        assert_eq!(CostBreakdown::from_csv(&costs.to_csv()).unwrap(), costs);
    }
}
