#![allow(dead_code)]

pub mod pappus;
