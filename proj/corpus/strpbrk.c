/*@ requires valid_str(s);
  @ assigns \nothing;
  @ ensures \result == strchr(s, c);
  @*/
char *strchr(const char *s, char c)
{
	/*@ loop invariant valid_str(s);
	  @ loop invariant \base_addr(s) == \base_addr(\at(s, Pre));
	  @ loop invariant \at(s, Pre) <= s;
	  @ loop invariant strchr(s, c) == strchr(\at(s, Pre), c);
	  @ loop variant strlen(s);
	  @*/
	for (; *s != c; ++s)
		if (*s == '\0')
			return NULL;
	return s;
}

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(cs);
  @  @ decreases strlen(cs);
  @  @ ensures strpbrk(cs, ct) == \null || cs <= strpbrk(cs, ct) < cs + strlen(cs);
  @  @/
  @ void strpbrk_in_range(char *cs, char *ct)
  @ {
  @   if (*cs != '\0')
  @     strpbrk_in_range(cs + 1, ct);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(cs);
  @  @ decreases strlen(cs);
  @  @ ensures strpbrk(cs, ct) == \null || strchr(ct, *strpbrk(cs, ct)) != \null;
  @  @/
  @ void strpbrk_found(char *cs, char *ct)
  @ {
  @   if (*cs != '\0')
  @     strpbrk_found(cs + 1, ct);
  @ }
  @*/

/*@ requires valid_str(cs);
  @ requires valid_str(ct);
  @ assigns \nothing;
  @ ensures \result == strpbrk(cs, ct);
  @*/
char *strpbrk(const char *cs, const char *ct)
{
	const char *sc;

	/*@ loop invariant valid_str(sc);
	  @ loop invariant \base_addr(sc) == \base_addr(cs);
	  @ loop invariant cs <= sc;
	  @ loop invariant strpbrk(sc, ct) == strpbrk(cs, ct);
	  @ loop variant strlen(sc);
	  @*/
	for (sc = cs; *sc != '\0'; ++sc) {
		if (strchr(ct, *sc) != NULL)
			return sc;
	}
	return NULL;
}
