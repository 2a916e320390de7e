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

/*@ requires valid_str(s);
  @ ensures \result == 0;
  @*/
int use_after(char *s)
{
	//@ ghost strchrnul_in_range(s, 'a');
	return 0;
}
