#![allow(dead_code)]

pub mod ritz;
pub mod series;
