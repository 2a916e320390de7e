/*@ ghost
  @ /@ requires valid_strn(s, n);
  @  @ assigns \nothing;
  @  @ ensures \result != 0 <==> (n == 0 || *s == '\0');
  @  @/
  @ int strn_done(char *s, size_t n)
  @ {
  @   if (n == 0)
  @     return 1;
  @   return *s == '\0';
  @ }
  @*/

/*@ ghost
  @ /@ assigns \nothing;
  @  @ ensures \result == a || \result == b;
  @  @ ensures \result <= a && \result <= b;
  @  @/
  @ size_t min_size(size_t a, size_t b)
  @ {
  @   if (a < b)
  @     return a;
  @   return b;
  @ }
  @*/

/*@ ghost
  @ /@ requires valid_strn(s, n);
  @  @ assigns \nothing;
  @  @ ensures \result == s + strnlen(s, n);
  @  @/
  @ char *strn_end(char *s, size_t n)
  @ {
  @   char *p = s;
  @   size_t k = n;
  @   /@ loop invariant valid_strn(p, k);
  @    @ loop invariant \base_addr(p) == \base_addr(s);
  @    @ loop invariant s <= p;
  @    @ loop invariant 0 <= k <= n;
  @    @ loop invariant strnlen(s, n) == p - s + strnlen(p, k);
  @    @ loop variant k;
  @    @/
  @   while (!strn_done(p, k)) {
  @     p++;
  @     k--;
  @   }
  @   return p;
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_strn(s, n);
  @  @ decreases n;
  @  @ ensures 0 <= strnlen(s, n) <= n;
  @  @/
  @ void strnlen_in_range(char *s, size_t n)
  @ {
  @   if (n > 0 && *s != '\0')
  @     strnlen_in_range(s + 1, n - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures valid_strn(s, n);
  @  @/
  @ void valid_str_strn(char *s, size_t n)
  @ {
  @   if (n > 0 && *s != '\0')
  @     valid_str_strn(s + 1, n - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures strnlen(s, n) <= strlen(s);
  @  @/
  @ void strnlen_le_strlen(char *s, size_t n)
  @ {
  @   if (n > 0 && *s != '\0')
  @     strnlen_le_strlen(s + 1, n - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires strlen(s) <= n;
  @  @ decreases strlen(s);
  @  @ ensures strnlen(s, n) == strlen(s);
  @  @/
  @ void strnlen_strlen(char *s, size_t n)
  @ {
  @   if (*s != '\0')
  @     strnlen_strlen(s + 1, n - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires n <= strlen(s);
  @  @ decreases n;
  @  @ ensures strnlen(s, n) == n;
  @  @/
  @ void strnlen_count(char *s, size_t n)
  @ {
  @   if (n > 0)
  @     strnlen_count(s + 1, n - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_strn(s, n);
  @  @ requires 0 <= i < strnlen(s, n);
  @  @ decreases i;
  @  @ ensures s[i] != '\0';
  @  @/
  @ void strnlen_before_end(char *s, size_t n, size_t i)
  @ {
  @   if (i > 0)
  @     strnlen_before_end(s + 1, n - 1, i - 1);
  @ }
  @*/

/*@ requires valid_strn(s, count);
  @ assigns \nothing;
  @ ensures \result == strnlen(s, count);
  @ ensures \result <= count;
  @*/
size_t strnlen(const char *s, size_t count)
{
	const char *sc = s;

	/*@ loop invariant valid_strn(sc, count);
	  @ loop invariant \base_addr(sc) == \base_addr(s);
	  @ loop invariant s <= sc;
	  @ loop invariant sc == s || \valid(s) && \valid(sc - 1);
	  @ loop invariant sc - s + count == \at(count, Pre);
	  @ loop invariant strnlen(s, \at(count, Pre)) == sc - s + strnlen(sc, count);
	  @ loop variant count;
	  @*/
	while (count != 0 && *sc != '\0') {
		++sc;
		--count;
	}
	return sc - s;
}
