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
  @ /@ requires valid_str(accept);
  @  @ assigns \nothing;
  @  @ ensures \result != 0 <==> strchr(accept, c) != \null;
  @  @/
  @ int accepts(char *accept, char c)
  @ {
  @   char *a = accept;
  @   /@ loop invariant valid_str(a);
  @    @ loop invariant \base_addr(a) == \base_addr(accept);
  @    @ loop invariant accept <= a;
  @    @ loop invariant strchr(a, c) == strchr(accept, c);
  @    @ loop variant strlen(a);
  @    @/
  @   while (*a != c && *a != '\0')
  @     a++;
  @   return *a == c;
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires valid_str(accept);
  @  @ decreases strlen(s);
  @  @ ensures strspn(s + strspn(s, accept), accept) == 0;
  @  @/
  @ void strspn_stops(char *s, char *accept)
  @ {
  @   if (*s != '\0' && accepts(accept, *s))
  @     strspn_stops(s + 1, accept);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires valid_str(accept);
  @  @ decreases strlen(s);
  @  @ ensures valid_str(s + strspn(s, accept));
  @  @/
  @ void strspn_valid(char *s, char *accept)
  @ {
  @   if (*s != '\0' && accepts(accept, *s))
  @     strspn_valid(s + 1, accept);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures strchr(s, '\0') != \null;
  @  @/
  @ void strchr_finds_nul(char *s)
  @ {
  @   if (*s != '\0')
  @     strchr_finds_nul(s + 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures 0 <= strspn(s, accept) <= strlen(s);
  @  @/
  @ void strspn_in_range(char *s, char *accept)
  @ {
  @   if (*s != '\0')
  @     strspn_in_range(s + 1, accept);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < strspn(s, accept);
  @  @ decreases i;
  @  @ ensures strchr(accept, s[i]) != \null;
  @  @/
  @ void strspn_accepted(char *s, char *accept, size_t i)
  @ {
  @   if (i > 0 && *s != '\0')
  @     strspn_accepted(s + 1, accept, i - 1);
  @ }
  @*/

/*@ requires valid_str(s);
  @ requires valid_str(accept);
  @ assigns \nothing;
  @ ensures \result == strspn(s, accept);
  @*/
size_t strspn(const char *s, const char *accept)
{
	const char *p;

	/*@ loop invariant valid_str(p);
	  @ loop invariant \base_addr(p) == \base_addr(s);
	  @ loop invariant s <= p;
	  @ loop invariant strlen(s) == p - s + strlen(p);
	  @ loop invariant strspn(s, accept) == p - s + strspn(p, accept);
	  @ loop variant strlen(p);
	  @*/
	for (p = s; *p != '\0'; ++p) {
		if (strchr(accept, *p) == NULL)
			break;
	}
	return p - s;
}
