#![no_std]

extern crate alloc;

pub mod words;
pub mod presentations;
pub mod enumeration;
pub mod oracles;
pub mod rewriting;
pub mod covering;
pub mod atlas;
