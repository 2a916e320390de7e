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
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures 0 <= strcspn(s, reject) <= strlen(s);
  @  @/
  @ void strcspn_in_range(char *s, char *reject)
  @ {
  @   if (*s != '\0')
  @     strcspn_in_range(s + 1, reject);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < strcspn(s, reject);
  @  @ decreases i;
  @  @ ensures strchr(reject, s[i]) == \null;
  @  @/
  @ void strcspn_skipped(char *s, char *reject, size_t i)
  @ {
  @   if (i > 0 && *s != '\0')
  @     strcspn_skipped(s + 1, reject, i - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures valid_str(s + strcspn(s, reject));
  @  @/
  @ void strcspn_valid(char *s, char *reject)
  @ {
  @   if (*s != '\0')
  @     strcspn_valid(s + 1, reject);
  @ }
  @*/

/*@ requires valid_str(s);
  @ requires valid_str(reject);
  @ assigns \nothing;
  @ ensures \result == strcspn(s, reject);
  @*/
size_t strcspn(const char *s, const char *reject)
{
	const char *p;

	/*@ loop invariant valid_str(p);
	  @ loop invariant \base_addr(p) == \base_addr(s);
	  @ loop invariant s <= p;
	  @ loop invariant strlen(s) == p - s + strlen(p);
	  @ loop invariant strcspn(s, reject) == p - s + strcspn(p, reject);
	  @ loop variant strlen(p);
	  @*/
	for (p = s; *p != '\0'; ++p) {
		if (strchr(reject, *p) != NULL)
			break;
	}
	return p - s;
}
