//! Published reference strings: the mice-and-cats sentence, its hypercube
//! strings, and the start of the dot-pattern enumeration.

pub const MICE: &str = "forall Animal.x forall Animal.y (Mouse(x) & Cat(y) -> Hate(x,y))";

pub const ROWS: [&str; 3] = [
    "4:2:1:1:0:3:2:1:0:2:0:2:1:1:0:3:3:0:2:0:1:1:0",
    "6:1:0:2:2:0:1:1:1:3:2:1:0:2:0:2:1:1:1:2:3:0:1:1:0:1:1:3:3:0:1:0:2:1:0",
    "5:1:0:2:2:0:0:0:1:3:1:0:1:3:2:1:0:2:0:3:3:0:2:0:1:1:0",
];
pub const CUBE3: &str = "3:2:1:1:0:3:2:1:0:2:0:2:1:1:0:1:0:2:2:0:1:1:1:3:2:1:0:2:0:1:0:2:2:0:0:0:1:3:1:0:1";
pub const CUBE6: &str = "3:2:1:1:0:3:2:1:0:2:0:2:1:1:0:3:3:0:2:0:1:1:0:1:0:1:0:1:0:2:2:0:1:1:1:3:2:1:0:2:0:2:1:1:1:2:3:0:1:1:0:1:1:3:3:0:1:0:2:1:0:1:0:2:2:0:0:0:1:3:1:0:1:3:2:1:0:2:0:3:3:0:2:0:1:1:0:1:0";

pub const ENUMERATION: &str = "\
n: 4 k: 1 p: 1, c: 1. (0,0)
n: 4 k: 1 p: 2, c: 1. (1,0)
n: 4 k: 1 p: 3, c: 1. (0,1)
n: 4 k: 1 p: 4, c: 1. (1,1)
n: 4 k: 2 p: 5, c: 1. (0,0) 2. (1,0)
n: 4 k: 2 p: 6, c: 1. (0,0) 2. (0,1)
n: 4 k: 2 p: 7, c: 1. (0,0) 2. (1,1)
n: 4 k: 2 p: 8, c: 1. (1,0) 2. (0,1)
n: 4 k: 2 p: 9, c: 1. (1,0) 2. (1,1)
n: 4 k: 2 p: 10, c: 1. (0,1) 2. (1,1)
n: 4 k: 3 p: 11, c: 1. (0,0) 2. (1,0) 3. (0,1)
n: 4 k: 3 p: 12, c: 1. (0,0) 2. (1,0) 3. (1,1)
n: 4 k: 3 p: 13, c: 1. (0,0) 2. (0,1) 3. (1,1)
n: 4 k: 3 p: 14, c: 1. (1,0) 2. (0,1) 3. (1,1)
n: 9 k: 1 p: 15, c: 1. (0,0)";
