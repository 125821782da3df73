pub mod exactnum;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod poly;
pub mod reductions;
pub mod ring;
