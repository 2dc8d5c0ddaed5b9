use std::collections::VecDeque;

use super::{Contour, Point};
use crate::error::{Error, Result};

/// Binary image, row-major, `true` = foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl Raster {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                got: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Out-of-bounds reads are background.
    pub fn get(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return false;
        }
        self.data[y as usize * self.width + x as usize]
    }

    fn foreground_components(&self) -> usize {
        let mut seen = vec![false; self.data.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.data.len() {
            if !self.data[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                let (x, y) = ((i % self.width) as i64, (i / self.width) as i64);
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let (nx, ny) = (x + dx, y + dy);
                    if self.get(nx, ny) {
                        let j = ny as usize * self.width + nx as usize;
                        if !seen[j] {
                            seen[j] = true;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        count
    }
}

// Moore neighbourhood, clockwise on screen (y grows downward), starting west.
const DIRS: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

fn dir_index(dx: i64, dy: i64) -> usize {
    DIRS.iter()
        .position(|&d| d == (dx, dy))
        .expect("backtrack pixel is a Moore neighbour")
}

/// Moore-neighbour boundary tracing of the single 4-connected foreground
/// region. The walk is clockwise on screen and starts at the topmost, then
/// leftmost, foreground pixel; it stops when the start pixel is re-entered
/// from the initial backtrack direction. Points are pixel coordinates
/// `(column, row)`.
pub fn trace_boundary(image: &Raster) -> Result<Contour> {
    let start = image
        .data
        .iter()
        .position(|&v| v)
        .ok_or(Error::EmptyImage)?;
    let components = image.foreground_components();
    if components != 1 {
        return Err(Error::MultipleComponents(components));
    }
    let s = ((start % image.width) as i64, (start / image.width) as i64);
    let init_back = 0; // west of the start pixel is background by construction
    let mut cur = s;
    let mut back = init_back;
    let mut path = vec![s];
    // Each boundary pixel can be entered from at most 8 directions.
    let limit = 8 * image.data.len() + 8;
    for _ in 0..limit {
        let mut found = None;
        for step in 1..=8 {
            let d = (back + step) % 8;
            let (nx, ny) = (cur.0 + DIRS[d].0, cur.1 + DIRS[d].1);
            if image.get(nx, ny) {
                let prev = (back + step - 1) % 8;
                let b = (cur.0 + DIRS[prev].0, cur.1 + DIRS[prev].1);
                found = Some(((nx, ny), dir_index(b.0 - nx, b.1 - ny)));
                break;
            }
        }
        let Some((next, next_back)) = found else {
            // isolated pixel
            break;
        };
        if next == s && next_back == init_back {
            break;
        }
        cur = next;
        back = next_back;
        path.push(cur);
    }
    if path.len() < 3 {
        return Err(Error::BoundaryTooShort(path.len()));
    }
    let points = path
        .into_iter()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect();
    Contour::new(points)
}
