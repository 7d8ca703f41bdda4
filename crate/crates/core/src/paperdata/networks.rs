/// Layer descriptions shipped with the crate, as `(key, JSON document)`.
pub const BUNDLED_NETWORKS: [(&str, &str); 4] = [
    ("unit", include_str!("../../data/networks/unit.json")),
    ("alexNet", include_str!("../../data/networks/alexnet.json")),
    (
        "googleNet",
        include_str!("../../data/networks/googlenet.json"),
    ),
    (
        "MobileNet-224",
        include_str!("../../data/networks/mobilenet-224.json"),
    ),
];

/// The bundled document for `name` (any known spelling).
pub fn bundled_network(name: &str) -> Option<&'static str> {
    let key = super::canonical_net(name).unwrap_or(name);
    BUNDLED_NETWORKS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, doc)| *doc)
}
