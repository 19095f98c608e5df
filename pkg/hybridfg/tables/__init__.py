'''
Package-recognition file
intentionally empty
'''
