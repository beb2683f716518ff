//! Session scripts for stdlab: parsing, canonical printing, execution and
//! report rendering.

pub mod ast;
pub mod commands;
pub mod parser;
pub mod printer;
pub mod render;
pub mod runner;
