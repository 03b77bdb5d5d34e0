//! Versioned JSON envelopes for reports.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    pub data: &'a T,
}

pub fn to_json<T: Serialize>(kind: &str, data: &T) -> String {
    serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, kind, data })
        .expect("reports serialize")
}
