pub mod cli;
pub mod combinatorics;
pub mod glue;
pub mod growth;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod roots;
pub mod volume;
