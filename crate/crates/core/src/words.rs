//! Permutations of `{1..n+1}`, reduced words in the adjacent transpositions
//! `a_1..a_n`, and the bounded faces of a word's wiring diagram.
//!
//! Convention: permutations act on the right, `i^sigma` is the image of `i`,
//! and a word `(i_1, ..., i_l)` denotes the product `a_{i_1} ... a_{i_l}`
//! applied left to right, so `i^(a b) = (i^a)^b`.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n+1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    /// `images[i]` is the image of `i + 1`.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { images: (1..=size).collect() }
    }

    /// Builds a permutation from its one-line images, validating bijectivity.
    pub fn from_oneline(images: Vec<usize>) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size];
        for &v in &images {
            if v < 1 || v > size || seen[v - 1] {
                return Err(Error::InvalidPermutation);
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The longest element `k -> size + 1 - k`.
    pub fn longest(size: usize) -> Self {
        Permutation { images: (1..=size).rev().collect() }
    }

    /// Number of points, i.e. `n + 1`.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Rank `n` of the ambient generator set `a_1..a_n`.
    pub fn rank(&self) -> usize {
        self.size() - 1
    }

    /// Image of `i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn oneline(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Number of inversions, which equals the length of any reduced word.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.size()];
        let mut cycles = 0;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] - 1;
            }
        }
        cycles
    }

    /// The block set `{k in 1..n : j <= k implies j^sigma <= k}`.
    ///
    /// These are the positions where the permutation matrix is block
    /// diagonal; `n + 1` itself is excluded because it carries no generator.
    pub fn block_set(&self) -> Vec<usize> {
        let mut blocks = Vec::new();
        let mut max_image = 0;
        for k in 1..self.size() {
            max_image = max_image.max(self.image(k));
            if max_image <= k {
                blocks.push(k);
            }
        }
        blocks
    }

    /// The lexicographically first reduced word, produced by repeatedly
    /// removing the smallest descent.
    pub fn canonical_word(&self) -> ReducedWord {
        let mut images = self.images.clone();
        let mut letters = Vec::with_capacity(self.inversions());
        loop {
            let descent = (0..images.len().saturating_sub(1)).find(|&i| images[i] > images[i + 1]);
            match descent {
                Some(i) => {
                    letters.push(i + 1);
                    images.swap(i, i + 1);
                }
                None => break,
            }
        }
        ReducedWord { letters, n: self.rank() }
    }

    /// Every reduced word for this permutation, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        fn recurse(images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
            let mut any = false;
            for i in 0..images.len() - 1 {
                if images[i] > images[i + 1] {
                    any = true;
                    prefix.push(i + 1);
                    images.swap(i, i + 1);
                    recurse(images, out, prefix);
                    images.swap(i, i + 1);
                    prefix.pop();
                }
            }
            if !any {
                out.push(prefix.clone());
            }
        }
        let mut images = self.images.clone();
        let mut out = Vec::new();
        recurse(&mut images, &mut out, &mut Vec::new());
        out
    }

    /// Parses `"45132"` (single digits, size <= 9) or `"4,5,1,3,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let images: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?
        } else {
            text.trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                    Error::Parse(format!("invalid permutation digit {c:?}"))
                }))
                .collect::<Result<_>>()?
        };
        Permutation::from_oneline(images)
    }
}

impl fmt::Display for Permutation {
    /// `[45132]` for sizes up to 9, comma-separated beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.size() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
        } else {
            for (k, v) in self.images.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// Product `a_{i_1} ... a_{i_l}` of the letters, applied left to right.
pub fn perm_from_letters(letters: &[usize], n: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (1..=n + 1).collect();
    for &letter in letters {
        if letter < 1 || letter > n {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        // Post-composing with a_j swaps the values j and j+1.
        for v in images.iter_mut() {
            if *v == letter {
                *v = letter + 1;
            } else if *v == letter + 1 {
                *v = letter;
            }
        }
    }
    Ok(Permutation { images })
}

/// A word is reduced when its length equals the inversion count of its product.
pub fn is_reduced(letters: &[usize], n: usize) -> Result<bool> {
    let sigma = perm_from_letters(letters, n)?;
    Ok(sigma.inversions() == letters.len())
}

/// A reduced word in the letters `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<usize>,
    n: usize,
}

impl ReducedWord {
    /// Validates letter ranges and reducedness.
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self> {
        if !is_reduced(&letters, n)? {
            return Err(Error::NotReduced);
        }
        Ok(ReducedWord { letters, n })
    }

    /// Parses `"2,3,1,2,4,3,2"`; the rank is the largest letter.
    /// An empty string yields the empty word of rank 0.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return ReducedWord::new(Vec::new(), 0);
        }
        let letters: Vec<usize> = trimmed
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::LetterOutOfRange { letter: 0, n: 0 });
        }
        let n = letters.iter().copied().max().unwrap_or(0);
        ReducedWord::new(letters, n)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> Permutation {
        perm_from_letters(&self.letters, self.n).expect("validated at construction")
    }

    /// Bounded faces of the wiring diagram.
    ///
    /// Each pair of consecutive occurrences `(k1, k2)` of a letter spans one
    /// face; its boundary consists of `k1`, `k2`, and every position strictly
    /// between them whose letter differs by exactly one row.  Faces are
    /// listed by `(k1, k2)`, and their total count is
    /// `sum_v (occurrences(v) - 1)`.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces = Vec::new();
        for k1 in 1..=self.letters.len() {
            let row = self.letters[k1 - 1];
            let k2 = match (k1 + 1..=self.letters.len()).find(|&k| self.letters[k - 1] == row) {
                Some(k) => k,
                None => continue,
            };
            let mut boundary = vec![k1];
            for k in k1 + 1..k2 {
                if self.letters[k - 1].abs_diff(row) == 1 {
                    boundary.push(k);
                }
            }
            boundary.push(k2);
            faces.push(Face { k1, k2, row, boundary });
        }
        faces.sort_by_key(|f| (f.k1, f.k2));
        faces
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Every one-line array of `{1..size}`, in lexicographic order.  Intended
/// for small exhaustive test sweeps.
pub fn all_permutations(size: usize) -> Vec<Permutation> {
    fn recurse(remaining: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            prefix.push(v);
            recurse(remaining, prefix, out);
            prefix.pop();
            remaining.insert(i, v);
        }
    }
    let mut raw = Vec::new();
    recurse(&mut (1..=size).collect(), &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|images| Permutation::from_oneline(images).expect("generated bijections"))
        .collect()
}

/// A bounded face of the wiring diagram, spanned by two consecutive
/// occurrences of one letter.  Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub k1: usize,
    pub k2: usize,
    /// The letter occurring at `k1` and `k2`.
    pub row: usize,
    /// `{k1, k2}` plus the adjacent-row positions strictly between them,
    /// in increasing order.
    pub boundary: Vec<usize>,
}
