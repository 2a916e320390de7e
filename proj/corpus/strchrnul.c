/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures s <= strchrnul(s, c) <= s + strlen(s);
  @  @/
  @ void strchrnul_in_range(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_in_range(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures *strchrnul(s, c) == c || *strchrnul(s, c) == '\0';
  @  @/
  @ void strchrnul_stops(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_stops(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures valid_str(strchrnul(s, c));
  @  @/
  @ void strchrnul_valid(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_valid(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures strchr(s, c) == \null || strchr(s, c) == strchrnul(s, c);
  @  @/
  @ void strchrnul_strchr(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_strchr(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < strchrnul(s, c) - s;
  @  @ decreases i;
  @  @ ensures s[i] != c && s[i] != '\0';
  @  @/
  @ void strchrnul_skipped(char *s, char c, size_t i)
  @ {
  @   if (i > 0 && *s != '\0' && *s != c)
  @     strchrnul_skipped(s + 1, c, i - 1);
  @ }
  @*/

/*@ requires valid_str(s);
  @ assigns \nothing;
  @ ensures \result == strchrnul(s, c);
  @ ensures \at(s, Pre) <= \result <= \at(s, Pre) + strlen(\at(s, Pre));
  @ ensures *\result == c || *\result == '\0';
  @*/
char *strchrnul(const char *s, char c)
{
	/*@ loop invariant valid_str(s);
	  @ loop invariant \base_addr(s) == \base_addr(\at(s, Pre));
	  @ loop invariant \at(s, Pre) <= s;
	  @ loop invariant strlen(\at(s, Pre)) == s - \at(s, Pre) + strlen(s);
	  @ loop invariant strchrnul(s, c) == strchrnul(\at(s, Pre), c);
	  @ loop variant strlen(s);
	  @*/
	while (*s && *s != c)
		s++;
	return s;
}
