//! Index-linked doubly linked lists.
//!
//! Nodes live in a caller-owned `[Link]` slice indexed by node id; a [`List`]
//! is only `(head, tail, len)`. A node belongs to at most one list per link
//! slice at a time. Push, unlink and whole-list moves are O(1).

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Link {
    prev: u32,
    next: u32,
}

impl Default for Link {
    fn default() -> Self {
        Link {
            prev: NIL,
            next: NIL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct List {
    head: u32,
    tail: u32,
    len: u32,
}

impl Default for List {
    fn default() -> Self {
        List {
            head: NIL,
            tail: NIL,
            len: 0,
        }
    }
}

impl List {
    pub(crate) fn len(&self) -> usize {
        self.len as usize
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn first(&self) -> Option<u32> {
        (self.head != NIL).then_some(self.head)
    }

    pub(crate) fn next(links: &[Link], node: u32) -> Option<u32> {
        let next = links[node as usize].next;
        (next != NIL).then_some(next)
    }

    pub(crate) fn push_back(&mut self, links: &mut [Link], node: u32) {
        links[node as usize] = Link {
            prev: self.tail,
            next: NIL,
        };
        if self.tail == NIL {
            self.head = node;
        } else {
            links[self.tail as usize].next = node;
        }
        self.tail = node;
        self.len += 1;
    }

    /// Unlinks `node`, which must be a member of this list.
    pub(crate) fn remove(&mut self, links: &mut [Link], node: u32) {
        let Link { prev, next } = links[node as usize];
        if prev == NIL {
            debug_assert_eq!(self.head, node);
            self.head = next;
        } else {
            links[prev as usize].next = next;
        }
        if next == NIL {
            debug_assert_eq!(self.tail, node);
            self.tail = prev;
        } else {
            links[next as usize].prev = prev;
        }
        links[node as usize] = Link::default();
        self.len -= 1;
    }

    pub(crate) fn iter<'a>(&self, links: &'a [Link]) -> Iter<'a> {
        Iter {
            links,
            cursor: self.head,
        }
    }
}

pub(crate) struct Iter<'a> {
    links: &'a [Link],
    cursor: u32,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.cursor == NIL {
            return None;
        }
        let node = self.cursor;
        self.cursor = self.links[node as usize].next;
        Some(node)
    }
}
