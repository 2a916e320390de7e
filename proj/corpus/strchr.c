/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(str);
  @  @ requires strchr(str, c) != \null;
  @  @ requires 0 <= i < strchr(str, c) - str;
  @  @ decreases i;
  @  @ ensures str[i] != c;
  @  @/
  @ void strchr_skipped(char *str, char c, size_t i)
  @ {
  @   if (i > 0 && *str != '\0' && *str != c)
  @     strchr_skipped(str + 1, c, i - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires strchr(s, c) != \null;
  @  @ decreases strlen(s);
  @  @ ensures s <= strchr(s, c) <= s + strlen(s);
  @  @/
  @ void strchr_in_range(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchr_in_range(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires strchr(s, c) != \null;
  @  @ decreases strlen(s);
  @  @ ensures *strchr(s, c) == c;
  @  @/
  @ void strchr_found(char *s, char c)
  @ {
  @   if (*s != c)
  @     strchr_found(s + 1, c);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures strchr(s, '\0') == s + strlen(s);
  @  @/
  @ void strchr_nul(char *s)
  @ {
  @   if (*s != '\0')
  @     strchr_nul(s + 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires strchr(s, c) == \null;
  @  @ requires 0 <= i <= strlen(s);
  @  @ decreases i;
  @  @ ensures s[i] != c;
  @  @/
  @ void strchr_absent(char *s, char c, size_t i)
  @ {
  @   if (i > 0 && *s != '\0')
  @     strchr_absent(s + 1, c, i - 1);
  @ }
  @*/

/*@ requires valid_str(s);
  @ assigns \nothing;
  @ ensures \result == strchr(s, c);
  @ ensures \result == \null || *\result == c;
  @ ensures \result == \null || \at(s, Pre) <= \result <= \at(s, Pre) + strlen(\at(s, Pre));
  @*/
char *strchr(const char *s, char c)
{
	/*@ loop invariant valid_str(s);
	  @ loop invariant \base_addr(s) == \base_addr(\at(s, Pre));
	  @ loop invariant \at(s, Pre) <= s;
	  @ loop invariant strlen(\at(s, Pre)) == s - \at(s, Pre) + strlen(s);
	  @ loop invariant strchr(s, c) == strchr(\at(s, Pre), c);
	  @ loop variant strlen(s);
	  @*/
	for (; *s != c; ++s)
		if (*s == '\0')
			return NULL;
	return s;
}
