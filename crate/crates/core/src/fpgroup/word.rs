use std::fmt::Write as _;

/// A freely reduced word. Letter `k > 0` is generator `k - 1`, `-k` its
/// inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

/// Generator index of a letter.
pub fn generator_of(letter: i32) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

/// The letter for generator `g` or its inverse.
pub fn letter(g: usize, inverse: bool) -> i32 {
    let l = i32::try_from(g + 1).expect("generator index fits in i32");
    if inverse {
        -l
    } else {
        l
    }
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![letter(g, false)],
        }
    }

    /// Freely reduces `letters`. Zero letters are not allowed.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Strips letters that cancel around the end of the word.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// `g^-1 w g`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.inverse().mul(self).mul(g)
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut out = vec![0; ngens];
        for &l in &self.letters {
            out[generator_of(l)] += i64::from(l.signum());
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&l| generator_of(l)).max()
    }

    /// Prints with runs collapsed to powers, e.g. `a^2*b^-1*a`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        let mut k = 0;
        while k < self.letters.len() {
            let l = self.letters[k];
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == l {
                run += 1;
            }
            if k > 0 {
                s.push('*');
            }
            s.push_str(&names[generator_of(l)]);
            let e = run as i64 * i64::from(l.signum());
            if e != 1 {
                write!(s, "^{e}").unwrap();
            }
            k += run;
        }
        s
    }
}
