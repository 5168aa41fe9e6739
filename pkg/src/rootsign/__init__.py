"""Sign characters of normalisers of elliptic Weyl group elements."""
